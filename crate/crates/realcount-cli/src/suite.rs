//! Golden checks of the worked examples, one anchor each.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use realcount::circuits::{fewnomial_bounds, FamilySystem};
use realcount::enumgeo::{
    eg_lower_bound, four_lines_parameters, kontsevich, kostka_two_row, log_ratio, schubert_delta, wronski_degree,
    wronskian,
};
use realcount::gale::{gale_transform, gale_transform_with, master_to_polynomial_pair, SparseSystem};
use realcount::groebner::{buchberger, eliminant, ideal_degree, MonomialOrder, MultiPoly};
use realcount::lattice::{hnf, kernel_basis, snf, solve_binomial, IntMatrix};
use realcount::lowerbounds::{
    linear_extensions, monte_carlo_gap, order_ideals, order_polytope_hull, parity_hypothesis, sign_imbalance,
    staircase_triangulation, wronski_system, Poset,
};
use realcount::mapdeg::{bracket, cfrac, count_distinct_roots_mdeg, RationalFunction};
use realcount::polytope::{
    convex_hull, foldable_signature, is_unimodular, kushnirenko_bound, mixed_volume, normalized_volume, Support,
    Triangulation,
};
use realcount::qpoly::{int, rat};
use realcount::rootcount::{
    bivariate_real_solutions, budan_fourier, count_real_roots, descartes_bound, isolate_roots_width, sturm_chain,
    variation_of, Endpoint,
};
use realcount::{Rational, UniPoly};

pub struct Anchor {
    pub id: &'static str,
    pub check: &'static str,
    pub pass: bool,
    pub detail: Option<String>,
}

type Check = Result<(), String>;

fn expect<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn sextic() -> UniPoly {
    UniPoly::from_ints(&[-6, 0, 55, 0, -27, -4, 5])
}

fn fin(n: i64) -> Endpoint {
    Endpoint::Finite(int(n))
}

fn mp(n: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
    MultiPoly::from_terms(n, &terms.iter().map(|(e, c)| (*e, int(*c))).collect::<Vec<_>>())
}

fn triangle_system() -> Vec<MultiPoly> {
    vec![
        mp(2, &[(&[2, 1], 1), (&[1, 2], 2), (&[1, 1], 1), (&[0, 0], -1)]),
        mp(2, &[(&[2, 1], 1), (&[1, 2], -1), (&[1, 1], -1), (&[0, 0], 2)]),
    ]
}

fn sup(dim: usize, pts: &[&[i64]]) -> Support {
    Support::new(dim, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
}

fn hexagon() -> Support {
    sup(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]])
}

fn gale_example() -> SparseSystem {
    let support = vec![vec![0, 0, 0], vec![2, 1, 0], vec![1, 2, 1], vec![0, 2, 3], vec![0, 2, 1], vec![1, 1, 3]];
    let rows = [[7, 15, -33, 1, 4, -11], [1, -3, 5, 1, -4, 0], [8, 13, -31, 1, 2, -11]];
    let coeffs = rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect();
    SparseSystem::new(support, coeffs).unwrap()
}

fn family() -> FamilySystem {
    let g = vec![
        UniPoly::from_ints(&[5, 11, 23, 41]),
        UniPoly::from_ints(&[8, 18, 38, 72]),
        UniPoly::from_ints(&[2, 6, 14, 30]),
    ];
    FamilySystem::from_diagonal(3, 5, vec![1, 1], g).unwrap()
}

fn three_four() -> Poset {
    Poset::chain(3).disjoint_union(&Poset::chain(4))
}

fn in_row_span(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let r0 = IntMatrix::from_i64(rows).rank();
    let mut aug = rows.to_vec();
    aug.push(v.to_vec());
    IntMatrix::from_i64(&aug).rank() == r0
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn roots_anchors() -> Vec<(&'static str, &'static str, fn() -> Check)> {
    vec![
        ("roots.eval.0", "sextic at 0 is -6", || expect(sextic().eval(&int(0)), int(-6))),
        ("roots.eval.2", "sextic at 2 is -26", || expect(sextic().eval(&int(2)), int(-26))),
        ("roots.derivative", "derivative of the sextic", || {
            expect(sextic().derivative(), UniPoly::from_ints(&[0, 110, 0, -108, -20, 30]))
        }),
        ("roots.variation.first", "(8,-4,-2,-1,2,3,-5,7,11,12) has 4 variations", || {
            expect(variation_of(&[8, -4, -2, -1, 2, 3, -5, 7, 11, 12].map(int)), 4)
        }),
        ("roots.variation.second", "(-1,0,1,0,1,-1,1,1,0,1) has 3 variations", || {
            expect(variation_of(&[-1, 0, 1, 0, 1, -1, 1, 1, 0, 1].map(int)), 3)
        }),
        ("roots.descartes.product", "(x-1)...(x-5) has Descartes bound 5", || {
            let f = UniPoly::from_roots(&[1, 2, 3, 4, 5].map(int));
            expect(descartes_bound(&f).map_err(|e| e.to_string())?, 5)
        }),
        ("roots.descartes.binomial", "x^7 - 3 has Descartes bound 1", || {
            expect(descartes_bound(&UniPoly::from_ints(&[-3, 0, 0, 0, 0, 0, 0, 1])).map_err(|e| e.to_string())?, 1)
        }),
        ("roots.budan-fourier", "sextic on (0, 2]: 3 - 1 = 2", || {
            expect(budan_fourier(&sextic(), &fin(0), &fin(2)).map_err(|e| e.to_string())?, 2)
        }),
        ("roots.sturm.f2", "third Sturm polynomial of the sextic, leading coefficient 85/9", || {
            let chain = sturm_chain(&sextic()).map_err(|e| e.to_string())?;
            let f2 = UniPoly::new(vec![int(6), rat(-22, 9), rat(-110, 3), rat(12, 5), rat(85, 9)]);
            expect(chain.polys.get(2).cloned(), Some(f2))
        }),
        ("roots.count.interval", "sextic has 2 roots in (0, 2)", || {
            expect(count_real_roots(&sextic(), &fin(0), &fin(2)).map_err(|e| e.to_string())?, 2)
        }),
        ("roots.count.line", "sextic has 4 real roots", || {
            expect(count_real_roots(&sextic(), &Endpoint::NegInf, &Endpoint::PosInf).map_err(|e| e.to_string())?, 4)
        }),
        ("roots.isolate", "sextic isolating intervals of width 1/100", || {
            let ivs = isolate_roots_width(&sextic(), Some(&rat(1, 100))).map_err(|e| e.to_string())?;
            expect(ivs.len(), 4)?;
            for (iv, x) in ivs.iter().zip([-0.339311, 0.340401, 1.59753, 2.25615]) {
                if !iv.contains_f64(x) || iv.width() > rat(1, 100) {
                    return Err(format!("interval ({}, {}) misses {x}", iv.lo, iv.hi));
                }
            }
            Ok(())
        }),
        ("roots.two-trinomials", "two trinomials with a = b = 78/55 have 5 positive solutions", || {
            let a = rat(78, 55);
            let f = MultiPoly::from_terms(2, &[(&[6, 0], int(1)), (&[0, 3], a.clone()), (&[0, 1], int(-1))]);
            let g = MultiPoly::from_terms(2, &[(&[0, 6], int(1)), (&[3, 0], a), (&[1, 0], int(-1))]);
            let sols = bivariate_real_solutions(&f, &g).map_err(|e| e.to_string())?;
            let mut xs: Vec<f64> = sols.iter().filter(|p| p[0] > 0.0 && p[1] > 0.0).map(|p| p[0]).collect();
            xs.sort_by(|a, b| b.total_cmp(a));
            expect(xs.len(), 5)?;
            for (x, e) in xs.iter().zip([0.8136, 0.7888, 0.7404, 0.6727, 0.6065]) {
                if (x - e).abs() >= 1e-3 {
                    return Err(format!("{x} vs {e}"));
                }
            }
            Ok(())
        }),
    ]
}

fn mdeg_anchors() -> Vec<(&'static str, &'static str, fn() -> Check)> {
    vec![
        ("mdeg.cfrac", "continued fraction of (4t^4-18t^2-6t)/(4t^3+8t^2-1)", || {
            let phi = RationalFunction::new(UniPoly::from_ints(&[0, -6, -18, 0, 4]), UniPoly::from_ints(&[-1, 0, 8, 4]))
                .map_err(|e| e.to_string())?;
            let q = cfrac(&phi).map_err(|e| e.to_string())?.quotients;
            expect(q, [[-2, 1], [1, -2], [-3, -2], [1, 1]].map(|c| UniPoly::from_ints(&c)).to_vec())
        }),
        ("mdeg.bracket.first", "[t-2] = 1", || expect(bracket(&UniPoly::from_ints(&[-2, 1])), 1)),
        ("mdeg.bracket.second", "[-2t+1] = -1", || expect(bracket(&UniPoly::from_ints(&[1, -2])), -1)),
        ("mdeg.distinct", "mdeg(f/f') of the sextic is 4", || {
            expect(count_distinct_roots_mdeg(&sextic()).map_err(|e| e.to_string())?, 4)
        }),
    ]
}

fn lattice_anchors() -> Vec<(&'static str, &'static str, fn() -> Check)> {
    vec![
        ("lattice.hnf", "HNF of [[16,22],[14,18]]", || {
            expect(hnf(&IntMatrix::from_i64(&[vec![16, 22], vec![14, 18]])).0, IntMatrix::from_i64(&[vec![2, 4], vec![0, 10]]))
        }),
        ("lattice.snf", "invariant factors of [[16,22],[14,18]]", || {
            expect(snf(&IntMatrix::from_i64(&[vec![16, 22], vec![14, 18]])).invariant_factors, vec![big(2), big(10)])
        }),
        ("lattice.kernel", "integer relations of the Gale example exponents", || {
            let a = IntMatrix::from_columns(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 2, 3], vec![0, 2, 1], vec![1, 1, 3]]);
            let k = kernel_basis(&a).ok_or("no kernel")?.to_i64().ok_or("huge kernel")?;
            expect(k.len(), 2)?;
            // columns ordered u²v, uv²w, v²w³, v²w, uvw³
            let ok = in_row_span(&k, &[2, -2, 3, -1, -2]) && in_row_span(&k, &[1, -3, -1, 3, 1]);
            expect(ok, true)
        }),
        ("lattice.binomial", "binomial system: 20 complex, 4 real, 1 positive", || {
            let s = solve_binomial(&IntMatrix::from_columns(&[vec![16, 14], vec![22, 18]]), &[int(3), int(96)])
                .map_err(|e| e.to_string())?;
            expect((s.complex_count, s.real_count, s.positive_count), (big(20), big(4), 1))?;
            expect(s.diagonal.iter().map(|(d, _)| d.clone()).collect::<Vec<_>>(), vec![big(2), big(10)])
        }),
    ]
}

fn polytope_anchors() -> Vec<(&'static str, &'static str, fn() -> Check)> {
    vec![
        ("polytope.hull.triangle", "hull of {(0,0),(2,1),(1,2),(1,1)} is a triangle", || {
            let h = convex_hull(&sup(2, &[&[0, 0], &[2, 1], &[1, 2], &[1, 1]])).map_err(|e| e.to_string())?;
            expect(h.vertices, vec![0, 1, 2])
        }),
        ("polytope.hull.hexagon", "hull of the hexagon support has six vertices", || {
            let h = convex_hull(&hexagon()).map_err(|e| e.to_string())?;
            expect(h.vertices, vec![1, 2, 3, 4, 5, 6])
        }),
        ("polytope.volume.triangle", "normalized volume of the triangle is 3", || {
            expect(normalized_volume(&sup(2, &[&[0, 0], &[2, 1], &[1, 2]])).map_err(|e| e.to_string())?, 3)
        }),
        ("polytope.ehrhart.triangle", "the triangle has 4 lattice points", || {
            expect(realcount::polytope::ehrhart_count(&sup(2, &[&[0, 0], &[2, 1], &[1, 2]]), 1).map_err(|e| e.to_string())?, 4)
        }),
        ("polytope.ehrhart.order", "order polytope of 2+2 has 9 lattice points", || {
            expect(order_polytope_hull(&Poset::two_plus_two()).map_err(|e| e.to_string())?.lattice_point_count(1), 9)
        }),
        ("polytope.staircase.unimodular", "staircase triangulation of 2+2 is unimodular", || {
            let t = staircase_triangulation(&Poset::two_plus_two()).map_err(|e| e.to_string())?;
            expect(is_unimodular(&t).map_err(|e| e.to_string())?, true)
        }),
        ("polytope.signature.hexagon", "folded hexagon triangulation has signature 4 - 2 = 2", || {
            let cells = vec![vec![1, 2, 3], vec![4, 5, 6], vec![0, 1, 3], vec![0, 3, 4], vec![0, 4, 6], vec![0, 6, 1]];
            let t = Triangulation::new(hexagon(), cells).map_err(|e| e.to_string())?;
            expect(foldable_signature(&t).map_err(|e| e.to_string())?, 2)
        }),
        ("polytope.signature.order", "staircase triangulation of 2+2 has signature 2", || {
            let t = staircase_triangulation(&Poset::two_plus_two()).map_err(|e| e.to_string())?;
            expect(foldable_signature(&t).map_err(|e| e.to_string())?, 2)
        }),
        ("polytope.kushnirenko", "triangle with interior point gives 3 solutions", || {
            expect(kushnirenko_bound(&sup(2, &[&[0, 0], &[2, 1], &[1, 2], &[1, 1]])).map_err(|e| e.to_string())?, 3)
        }),
        ("polytope.mixedvol.2", "rectangle m = 2 with the triangle: 2m+2 = 6", || {
            let rect = sup(2, &[&[0, 0], &[2, 0], &[0, 1], &[2, 1]]);
            expect(mixed_volume(&[rect, sup(2, &[&[0, 0], &[2, 1], &[1, 2]])]).map_err(|e| e.to_string())?, 6)
        }),
        ("polytope.mixedvol.3", "rectangle m = 3 with the triangle: 2m+2 = 8", || {
            let rect = sup(2, &[&[0, 0], &[3, 0], &[0, 1], &[3, 1]]);
            expect(mixed_volume(&[rect, sup(2, &[&[0, 0], &[2, 1], &[1, 2]])]).map_err(|e| e.to_string())?, 8)
        }),
    ]
}

fn groebner_anchors() -> Vec<(&'static str, &'static str, fn() -> Check)> {
    vec![
        ("groebner.basis", "lex basis of the triangle system holds 9y^3+9y^2+2y+9 up to scale", || {
            let g = buchberger(&triangle_system(), &MonomialOrder::lex(2)).map_err(|e| e.to_string())?;
            let target = UniPoly::from_ints(&[9, 2, 9, 9]).monic();
            let found = g.generators.iter().filter_map(|f| f.to_univariate(1)).any(|u| u.monic() == target);
            expect(found, true)
        }),
        ("groebner.degree", "the triangle system has 3 solutions", || {
            let g = buchberger(&triangle_system(), &MonomialOrder::grevlex(2)).map_err(|e| e.to_string())?;
            expect(ideal_degree(&g), Some(3))
        }),
        ("groebner.eliminant", "eliminant in y is y^3 + y^2 + 2/9 y + 1", || {
            let e = eliminant(&triangle_system(), 1).map_err(|e| e.to_string())?;
            expect(e.monic(), UniPoly::new(vec![int(1), rat(2, 9), int(1), int(1)]))
        }),
    ]
}

fn circuit_anchors() -> Vec<(&'static str, &'static str, fn() -> Check)> {
    vec![
        ("circuits.eliminant", "degree-11 family eliminant", || {
            expect(family().eliminant(), UniPoly::from_ints(&[-2, -6, -14, -30, 0, 40, 178, 572, 1520, 2404, 3214, 2952]))
        }),
        ("circuits.family-form", "eliminant is x^l g1 g2 - g3", || {
            let f = family();
            let lhs = &(&UniPoly::monomial(int(1), 5) * &f.g[0]) * &f.g[1];
            expect(f.eliminant(), &lhs - &f.g[2])
        }),
        ("circuits.count", "family eliminant has 3 real roots", || expect(family().real_count(), 3)),
        ("circuits.degree", "family eliminant has degree l + k|eps| = 11", || expect(family().eliminant().degree(), Some(11))),
        ("circuits.bound", "3 <= k + k|eps| + 2 = 11 with matching parity", || {
            let f = family();
            expect((f.real_bound(), f.real_count() % 2 == f.real_bound() % 2), (11, true))
        }),
        ("bounds.khovanskii", "Khovanskii bound at l = n = 2 is 5184", || {
            expect(fewnomial_bounds(2, 2).map_err(|e| e.to_string())?.khovanskii, big(5184))
        }),
        ("bounds.l0", "X(0, n) = 1", || expect(fewnomial_bounds(0, 4).map_err(|e| e.to_string())?.exact_positive, Some(1))),
        ("bounds.l1", "X(1, n) = n + 1 and 2n + 1 real for circuits", || {
            let b = fewnomial_bounds(1, 3).map_err(|e| e.to_string())?;
            expect((b.exact_positive, b.circuit_real), (Some(4), Some(7)))
        }),
    ]
}

fn gale_anchors() -> Vec<(&'static str, &'static str, fn() -> Check)> {
    vec![
        ("gale.weights", "weight lattice of the Gale example", || {
            let g = gale_transform(&gale_example()).map_err(|e| e.to_string())?;
            let pos: Vec<usize> = (1..=5).map(|s| g.columns.iter().position(|&c| c == s).unwrap()).collect();
            let w: Vec<Vec<i64>> = g.weights().iter().map(|r| pos.iter().map(|&i| r[i]).collect()).collect();
            // support order u²v, uv²w, v²w³, v²w, uvw³
            expect(in_row_span(&w, &[2, -2, 3, -1, -2]) && in_row_span(&w, &[1, -3, -1, 3, 1]), true)
        }),
        ("gale.identity", "(uv^2w)^3 (v^2w^3) = (u^2v)(v^2w)^3(uvw^3)", || {
            let add = |terms: &[(&[i64; 3], i64)]| {
                terms.iter().fold([0i64; 3], |acc, (e, k)| [acc[0] + k * e[0], acc[1] + k * e[1], acc[2] + k * e[2]])
            };
            let lhs = add(&[(&[1, 2, 1], 3), (&[0, 2, 3], 1)]);
            let rhs = add(&[(&[2, 1, 0], 1), (&[0, 2, 1], 3), (&[1, 1, 3], 1)]);
            expect(lhs, rhs)
        }),
        ("gale.cleared", "first cleared polynomial is y^3(1-x-y) - x(1/2-x+y)^3 (10/11)(1+x-3y)", || {
            let g = gale_transform_with(&gale_example(), &[3, 4, 5]).map_err(|e| e.to_string())?;
            let polys = master_to_polynomial_pair(&g);
            let (x, y) = (MultiPoly::var(2, 0), MultiPoly::var(2, 1));
            let one = MultiPoly::constant(2, int(1));
            let l1 = one.sub(&x).sub(&y);
            let l2 = MultiPoly::constant(2, rat(1, 2)).sub(&x).add(&y);
            let l3 = one.add(&x).sub(&y.scale(&int(3))).scale(&rat(10, 11));
            let f = y.pow(3).mul(&l1).sub(&x.mul(&l2.pow(3)).mul(&l3));
            let ok = polys.iter().any(|p| *p == f || *p == f.scale(&int(-1)));
            expect(ok, true)
        }),
    ]
}

fn enum_anchors() -> Vec<(&'static str, &'static str, fn() -> Check)> {
    vec![
        ("enum.wronskian", "W(t^2, 1) = -2t as det[[f, g], [f', g']]", || {
            let w = wronskian(&[UniPoly::from_ints(&[0, 0, 1]), UniPoly::one()]).map_err(|e| e.to_string())?;
            expect(w, UniPoly::from_ints(&[0, -2]))
        }),
        ("enum.lines", "two lines meet four general lines", || expect(wronski_degree(2, 2).map_err(|e| e.to_string())?, big(2))),
        ("enum.delta", "delta(567) = 462", || {
            let t = schubert_delta(4, 3).map_err(|e| e.to_string())?;
            expect(t.get(&vec![5, 6, 7]).cloned(), Some(big(462)))
        }),
        ("enum.wronski-degree", "#(2, 9) = 4862", || expect(wronski_degree(2, 9).map_err(|e| e.to_string())?, big(4862))),
        ("enum.sigma.row", "sigma for m+p = 11 is 14, 110, 286, 286", || {
            let got: Result<Vec<BigInt>, _> = [(2, 9), (3, 8), (4, 7), (5, 6)].iter().map(|&(m, p)| eg_lower_bound(m, p)).collect();
            expect(got.map_err(|e| e.to_string())?, [14, 110, 286, 286].map(big).to_vec())
        }),
        ("enum.sigma.even", "sigma is 0 when m+p is even", || expect(eg_lower_bound(2, 2).map_err(|e| e.to_string())?, big(0))),
        ("enum.log-ratio.100", "log ratio at m = 2, m+p-1 = 100", || {
            let r = log_ratio(2, 99).map_err(|e| e.to_string())?;
            expect((r - 0.47388).abs() <= 1e-4, true).map_err(|_| format!("{r}"))
        }),
        ("enum.log-ratio.1000", "log ratio at m = 2, m+p-1 = 1000", || {
            let r = log_ratio(2, 999).map_err(|e| e.to_string())?;
            expect((r - 0.49627).abs() <= 1e-4, true).map_err(|_| format!("{r}"))
        }),
        ("enum.kontsevich", "N3, N4, N5 = 12, 620, 87304", || {
            let got: Result<Vec<BigInt>, _> = (3..=5).map(kontsevich).collect();
            expect(got.map_err(|e| e.to_string())?, [12, 620, 87304].map(big).to_vec())
        }),
        ("enum.kostka", "K(3,2,2,2,1) = 5", || expect(kostka_two_row(&[3, 2, 2, 2, 1]).map_err(|e| e.to_string())?, big(5))),
        ("enum.four-lines", "both lines are real for s in (0, 1)", || {
            expect(four_lines_parameters(&rat(1, 3)).map_err(|e| e.to_string())?.intervals.len(), 2)
        }),
    ]
}

fn poset_anchors() -> Vec<(&'static str, &'static str, fn() -> Check)> {
    vec![
        ("poset.ideals", "2+2 has the nine listed order ideals", || {
            let p = Poset::two_plus_two();
            let got: Vec<String> = order_ideals(&p)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|s| s.iter().map(|&i| p.names[i].as_str()).collect())
                .collect();
            expect(got, ["", "x", "z", "wx", "xz", "yz", "wxz", "xyz", "wxyz"].map(String::from).to_vec())
        }),
        ("poset.extensions", "2+2 has six linear extensions", || {
            expect(linear_extensions(&Poset::two_plus_two()).map_err(|e| e.to_string())?.len(), 6)
        }),
        ("poset.extensions.chains", "3-chain and 4-chain: binom(7,3) = 35", || {
            expect(linear_extensions(&three_four()).map_err(|e| e.to_string())?.len(), 35)
        }),
        ("poset.sigma", "sign imbalance of 2+2 is 2", || expect(sign_imbalance(&Poset::two_plus_two()).map_err(|e| e.to_string())?, 2)),
        ("poset.sigma.chains", "sign imbalance of 3-chain and 4-chain is 3", || {
            expect(sign_imbalance(&three_four()).map_err(|e| e.to_string())?, 3)
        }),
        ("poset.wronski-form", "Wronski polynomial of 2+2", || {
            let c: Vec<Rational> = (0..5).map(|i| int(i + 1)).collect();
            let sys = wronski_system(&Poset::two_plus_two(), &vec![c; 4], None).map_err(|e| e.to_string())?;
            let want = mp(
                4,
                &[
                    (&[0, 0, 0, 0], 1),
                    (&[0, 1, 0, 0], 2),
                    (&[0, 0, 0, 1], 2),
                    (&[1, 1, 0, 0], 3),
                    (&[0, 1, 0, 1], 3),
                    (&[0, 0, 1, 1], 3),
                    (&[0, 1, 1, 1], 4),
                    (&[1, 1, 0, 1], 4),
                    (&[1, 1, 1, 1], 5),
                ],
            );
            expect(sys[0].clone(), want)
        }),
        ("poset.parity", "2+2 satisfies the parity hypothesis", || expect(parity_hypothesis(&Poset::two_plus_two()), true)),
        ("poset.parity.chains", "3-chain and 4-chain fail the parity hypothesis", || expect(parity_hypothesis(&three_four()), false)),
        ("poset.gap", "200 random 2+2 Wronski systems have 2 or 6 real solutions", || {
            let h = monte_carlo_gap(&Poset::two_plus_two(), 200, 7, 200).map_err(|e| e.to_string())?;
            expect(h.counts.keys().all(|&c| c == 2 || c == 6) && h.counts.contains_key(&2), true)
                .map_err(|_| format!("{:?}", h.counts))
        }),
    ]
}

pub fn run() -> Vec<Anchor> {
    let all = [roots_anchors(), mdeg_anchors(), lattice_anchors(), polytope_anchors(), groebner_anchors(), circuit_anchors()]
        .into_iter()
        .chain([gale_anchors(), enum_anchors(), poset_anchors()])
        .flatten();
    all.map(|(id, check, f)| {
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        Anchor { id, check, pass: r.is_ok(), detail: r.err() }
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_anchor_passes() {
        let report = run();
        assert!(report.len() >= 30);
        for a in &report {
            assert!(a.pass, "{}: {:?}", a.id, a.detail);
        }
    }
}
