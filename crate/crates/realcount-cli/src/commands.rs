use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use realcount::circuits::{circuit_eliminant, circuit_real_count, fewnomial_bounds, CircuitSystem, FamilySystem};
use realcount::enumgeo::{
    eg_lower_bound, kontsevich, kostka_two_row, log_ratio, schubert_delta, wronski_degree,
};
use realcount::gale::{
    cleared_pair, gale_transform, gale_transform_with, master_solutions, master_to_sparse_f64, GaleSystem, SparseSystem,
};
use realcount::groebner::{
    buchberger, eliminant, ideal_degree, shape_lemma_real_count_with, MonomialOrder, ShapeOutcome,
};
use realcount::lattice::{hnf, snf, solve_binomial, IntMatrix};
use realcount::lowerbounds::{
    cox_orientable, linear_extensions, monte_carlo_gap, order_ideals, parity_hypothesis, sign_imbalance,
};
use realcount::mapdeg::{cfrac, count_roots_where_positive, mapping_degree, signed_count, RationalFunction};
use realcount::polytope::{
    convex_hull, ehrhart_count, foldable_signature, is_unimodular, mixed_volume, normalized_volume, regular_subdivision,
    Support,
};
use realcount::rootcount::{
    bivariate_real_solutions, budan_fourier, count_real_roots, descartes_bound, isolate_roots_width, sturm_chain,
    Endpoint,
};
use realcount::Rational;
use serde_json::{json, Value};

use crate::io::{self, big, domain, rat, rats, read_json, usage, CliError};
use crate::suite;

pub struct Output {
    pub payload: Value,
    /// The command ran but reports failure (paper-suite with a failing anchor).
    pub failed: bool,
}

impl From<Value> for Output {
    fn from(payload: Value) -> Self {
        Output { payload, failed: false }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Univariate root counting and isolation.
    #[command(subcommand)]
    Roots(RootsCmd),
    /// Mapping degree and continued fraction of num/den.
    Mdeg {
        #[arg(long)]
        num: PathBuf,
        #[arg(long)]
        den: PathBuf,
    },
    /// Binomial systems x^A = β.
    #[command(subcommand)]
    Binomial(BinomialCmd),
    /// Hermite and Smith normal forms.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Newton polytopes, volumes, subdivisions.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Gröbner bases, eliminants, Shape-Lemma counts.
    Groebner(GroebnerArgs),
    /// Circuit systems and the eliminant family.
    #[command(subcommand)]
    Circuit(CircuitCmd),
    /// Fewnomial bound calculators.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Gale duality for sparse systems.
    #[command(subcommand)]
    Gale(GaleCmd),
    /// Enumerative tables.
    #[command(subcommand)]
    Enum(EnumCmd),
    /// Posets, Wronski systems and lower bounds.
    Poset(PosetArgs),
    /// Golden checks of the worked examples.
    PaperSuite,
}

#[derive(Subcommand, Debug)]
pub enum RootsCmd {
    /// Distinct real roots in (lo, hi); infinite when omitted.
    Count {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<String>,
    },
    /// Disjoint isolating intervals, one per real root.
    Isolate {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value = "1/100")]
        width: String,
    },
    /// The Sturm chain.
    Sturm {
        #[arg(long)]
        poly: PathBuf,
    },
    /// Budan–Fourier bound on (lo, hi].
    BudanFourier {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<String>,
    },
    /// Descartes' bound on positive roots.
    Descartes {
        #[arg(long)]
        poly: PathBuf,
    },
    /// Σ sign g(a) over the real roots a of f.
    SignedCount {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// #{a : f(a) = 0, g(a) > 0}.
    CountWherePositive {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// Real solutions of two bivariate polynomials by resultants.
    Bivariate {
        #[arg(long)]
        system: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum BinomialCmd {
    Solve {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    Hnf {
        #[arg(long)]
        matrix: PathBuf,
    },
    Snf {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum PolytopeCmd {
    /// Normalized volume n!·vol.
    Volume {
        #[arg(long)]
        support: PathBuf,
    },
    /// Vertices and facet inequalities.
    Hull {
        #[arg(long)]
        support: PathBuf,
    },
    /// Lattice points of d·P.
    Ehrhart {
        #[arg(long)]
        support: PathBuf,
        #[arg(long)]
        d: u32,
    },
    /// Regular subdivision induced by a lifting.
    Triangulate {
        #[arg(long)]
        support: PathBuf,
        #[arg(long)]
        lifting: PathBuf,
    },
    /// Mixed volume of n supports in dimension n.
    Mixedvol {
        #[arg(long = "support", required = true)]
        supports: Vec<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Order {
    Lex,
    Grevlex,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum GroebnerOp {
    Basis,
    Degree,
    Eliminant,
    Realcount,
}

#[derive(Args, Debug)]
pub struct GroebnerArgs {
    #[arg(value_enum)]
    op: GroebnerOp,
    #[arg(long)]
    system: PathBuf,
    /// Monomial order for `basis`, variables ranked as listed in the input.
    #[arg(long, value_enum, default_value = "lex")]
    order: Order,
    /// Variable kept by `eliminant`; defaults to the last one.
    #[arg(long)]
    var: Option<String>,
    /// Random linear change of coordinates before `realcount`; none when omitted.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum CircuitCmd {
    Eliminant {
        #[arg(long)]
        system: PathBuf,
    },
    Count {
        #[arg(long)]
        system: PathBuf,
    },
    /// x_i = g_i (i < n), x^ε x_n^l = g_n.
    Family {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        coeffs: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    Fewnomial {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum GaleCmd {
    Transform {
        #[arg(long)]
        system: PathBuf,
        /// Support indices of the monomials to solve for.
        #[arg(long)]
        pivots: Option<String>,
    },
    /// Cleared polynomials Π p^{β+} − Π p^{β−} of a transform.
    Pair {
        #[arg(long)]
        gale: PathBuf,
    },
    /// Master-system solutions transported back to the torus.
    Solve {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        pivots: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum EnumCmd {
    WronskiDegree {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u32,
    },
    Sigma {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u32,
    },
    LogRatio {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        p: u64,
    },
    Kontsevich {
        #[arg(long)]
        d: u32,
    },
    Kostka {
        #[arg(long)]
        content: String,
    },
    DeltaTable {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum PosetOp {
    Ideals,
    Extensions,
    SignImbalance,
    Orientable,
    Experiment,
}

#[derive(Args, Debug)]
pub struct PosetArgs {
    #[arg(value_enum)]
    op: PosetOp,
    #[arg(long)]
    poset: PathBuf,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Required by `experiment`.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 200)]
    range: i64,
}

pub fn run(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Roots(c) => roots(c).map(Output::from),
        Command::Mdeg { num, den } => {
            let (_, n) = io::uni_poly(&read_json(&num)?)?;
            let (_, d) = io::uni_poly(&read_json(&den)?)?;
            let phi = RationalFunction::new(n, d).map_err(domain)?;
            let q = cfrac(&phi).map_err(domain)?;
            let deg = mapping_degree(&phi).map_err(domain)?;
            let quotients: Vec<Value> = q.quotients.iter().map(|f| io::uni_poly_json(f, "t")).collect();
            Ok(json!({"mdeg": deg, "quotients": quotients}).into())
        }
        Command::Binomial(BinomialCmd::Solve { matrix, rhs }) => {
            let a = IntMatrix::from_i64(&io::int_rows(&read_json(&matrix)?)?);
            let rv = read_json(&rhs)?;
            let beta = io::rational_list(rv.get("rhs").unwrap_or(&rv))?;
            let s = solve_binomial(&a, &beta).map_err(domain)?;
            let diagonal: Vec<Value> = s.diagonal.iter().map(|(d, c)| json!([big(d), rat(c)])).collect();
            Ok(json!({
                "complex_count": big(&s.complex_count),
                "real_count": big(&s.real_count),
                "positive_count": s.positive_count,
                "diagonal": diagonal,
                "U": matrix_json(&s.u),
                "V": matrix_json(&s.v),
            })
            .into())
        }
        Command::Lattice(c) => {
            let (LatticeCmd::Hnf { matrix } | LatticeCmd::Snf { matrix }) = &c;
            let a = IntMatrix::from_i64(&io::int_rows(&read_json(matrix)?)?);
            Ok(match c {
                LatticeCmd::Hnf { .. } => {
                    let (h, u) = hnf(&a);
                    json!({"H": matrix_json(&h), "U": matrix_json(&u)})
                }
                LatticeCmd::Snf { .. } => {
                    let s = snf(&a);
                    let f: Vec<Value> = s.invariant_factors.iter().map(big).collect();
                    json!({"D": matrix_json(&s.d), "U": matrix_json(&s.u), "V": matrix_json(&s.v), "invariant_factors": f})
                }
            }
            .into())
        }
        Command::Polytope(c) => polytope(c).map(Output::from),
        Command::Groebner(a) => groebner(a).map(Output::from),
        Command::Circuit(c) => circuit(c).map(Output::from),
        Command::Bounds(BoundsCmd::Fewnomial { l, n }) => {
            let b = fewnomial_bounds(l, n).map_err(domain)?;
            let certified = |c: &realcount::circuits::CertifiedBound| {
                json!({"upper": rat(&c.upper), "approx": c.approx(), "strict_integer": big(&c.strict_integer)})
            };
            Ok(json!({
                "l": l,
                "n": n,
                "khovanskii": big(&b.khovanskii),
                "positive": certified(&b.positive),
                "real": certified(&b.real),
                "exact_positive": b.exact_positive,
                "circuit_real": b.circuit_real,
                "construction_lower": b.construction_lower.as_ref().map(big),
            })
            .into())
        }
        Command::Gale(c) => gale(c).map(Output::from),
        Command::Enum(c) => enumerative(c).map(Output::from),
        Command::Poset(a) => poset(a).map(Output::from),
        Command::PaperSuite => {
            let report = suite::run();
            let failed = report.iter().any(|a| !a.pass);
            let passed = report.iter().filter(|a| a.pass).count();
            let anchors: Vec<Value> =
                report.iter().map(|a| json!({"id": a.id, "check": a.check, "pass": a.pass, "detail": a.detail})).collect();
            let mut payload = json!({"total": report.len(), "passed": passed, "anchors": anchors});
            if failed {
                payload["code"] = json!("AnchorFailure");
            }
            Ok(Output { payload, failed })
        }
    }
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(m.data().iter().map(|r| Value::Array(r.iter().map(big).collect())).collect())
}

fn endpoint(s: Option<&str>, inf: Endpoint) -> Result<Endpoint, CliError> {
    match s {
        None => Ok(inf),
        Some("-inf") | Some("-oo") => Ok(Endpoint::NegInf),
        Some("inf") | Some("+inf") | Some("oo") => Ok(Endpoint::PosInf),
        Some(x) => Ok(Endpoint::Finite(io::parse_rat(x)?)),
    }
}

fn roots(c: RootsCmd) -> Result<Value, CliError> {
    let load = |p: &PathBuf| -> Result<(String, realcount::UniPoly), CliError> { io::uni_poly(&read_json(p)?) };
    match c {
        RootsCmd::Count { poly, lo, hi } => {
            let (_, f) = load(&poly)?;
            let a = endpoint(lo.as_deref(), Endpoint::NegInf)?;
            let b = endpoint(hi.as_deref(), Endpoint::PosInf)?;
            Ok(json!({"count": count_real_roots(&f, &a, &b).map_err(domain)?}))
        }
        RootsCmd::Isolate { poly, width } => {
            let (_, f) = load(&poly)?;
            let w = io::parse_rat(&width)?;
            if w <= Rational::from_integer(0.into()) {
                return Err(usage("width must be positive"));
            }
            let ivs = isolate_roots_width(&f, Some(&w)).map_err(domain)?;
            let intervals: Vec<Value> = ivs.iter().map(|iv| json!([rat(&iv.lo), rat(&iv.hi)])).collect();
            Ok(json!({"intervals": intervals}))
        }
        RootsCmd::Sturm { poly } => {
            let (var, f) = load(&poly)?;
            let chain = sturm_chain(&f).map_err(domain)?;
            let polys: Vec<Value> = chain.polys.iter().map(|p| io::uni_poly_json(p, &var)).collect();
            Ok(json!({
                "chain": polys,
                "variation_neg_inf": chain.variation_at(&Endpoint::NegInf),
                "variation_pos_inf": chain.variation_at(&Endpoint::PosInf),
            }))
        }
        RootsCmd::BudanFourier { poly, lo, hi } => {
            let (_, f) = load(&poly)?;
            let a = endpoint(lo.as_deref(), Endpoint::NegInf)?;
            let b = endpoint(hi.as_deref(), Endpoint::PosInf)?;
            Ok(json!({"bound": budan_fourier(&f, &a, &b).map_err(domain)?}))
        }
        RootsCmd::Descartes { poly } => {
            let (_, f) = load(&poly)?;
            Ok(json!({"bound": descartes_bound(&f).map_err(domain)?}))
        }
        RootsCmd::SignedCount { f, g } => {
            let ((_, f), (_, g)) = (load(&f)?, load(&g)?);
            Ok(json!({"signed_count": signed_count(&f, &g).map_err(domain)?}))
        }
        RootsCmd::CountWherePositive { f, g } => {
            let ((_, f), (_, g)) = (load(&f)?, load(&g)?);
            Ok(json!({"count": count_roots_where_positive(&f, &g).map_err(domain)?}))
        }
        RootsCmd::Bivariate { system } => {
            let (vars, polys) = io::system(&read_json(&system)?)?;
            if vars.len() != 2 || polys.len() != 2 {
                return Err(usage("need two polynomials in two variables"));
            }
            let sols = bivariate_real_solutions(&polys[0], &polys[1]).map_err(domain)?;
            Ok(json!({"vars": vars, "solutions": sols, "count": sols.len()}))
        }
    }
}

fn load_support(p: &PathBuf) -> Result<Support, CliError> {
    io::support(&read_json(p)?)
}

fn polytope(c: PolytopeCmd) -> Result<Value, CliError> {
    match c {
        PolytopeCmd::Volume { support } => {
            let s = load_support(&support)?;
            Ok(json!({"normalized_volume": normalized_volume(&s).map_err(domain)?}))
        }
        PolytopeCmd::Hull { support } => {
            let s = load_support(&support)?;
            let h = convex_hull(&s).map_err(domain)?;
            let vertices: Vec<&Vec<i64>> = h.vertices.iter().map(|&i| &s.points()[i]).collect();
            let facets: Vec<Value> = h.facets.iter().map(|f| json!({"normal": f.normal, "offset": f.offset})).collect();
            Ok(json!({"vertices": vertices, "vertex_indices": h.vertices, "facets": facets, "affine_dim": h.affine_dim}))
        }
        PolytopeCmd::Ehrhart { support, d } => {
            let s = load_support(&support)?;
            Ok(json!({"d": d, "count": ehrhart_count(&s, d).map_err(domain)?}))
        }
        PolytopeCmd::Triangulate { support, lifting } => {
            let s = load_support(&support)?;
            let lv = read_json(&lifting)?;
            let omega = io::int_list(lv.get("lifting").unwrap_or(&lv))?;
            let t = regular_subdivision(&s, &omega).map_err(domain)?;
            let mut out = json!({
                "cells": t.simplices,
                "volumes": t.volumes(),
                "is_triangulation": t.is_triangulation,
            });
            if t.is_triangulation {
                out["unimodular"] = json!(is_unimodular(&t).map_err(domain)?);
                out["signature"] = match foldable_signature(&t) {
                    Ok(s) => json!(s),
                    Err(_) => Value::Null,
                };
            }
            Ok(out)
        }
        PolytopeCmd::Mixedvol { supports } => {
            let ss: Vec<Support> = supports.iter().map(load_support).collect::<Result<_, _>>()?;
            Ok(json!({"mixed_volume": mixed_volume(&ss).map_err(domain)?}))
        }
    }
}

fn groebner(a: GroebnerArgs) -> Result<Value, CliError> {
    let (vars, polys) = io::system(&read_json(&a.system)?)?;
    let n = vars.len();
    match a.op {
        GroebnerOp::Basis => {
            let order = match a.order {
                Order::Lex => MonomialOrder::lex(n),
                Order::Grevlex => MonomialOrder::grevlex(n),
            };
            let g = buchberger(&polys, &order).map_err(domain)?;
            let gens: Vec<Value> = g.generators.iter().map(|f| io::multi_poly_json(f, &vars)).collect();
            Ok(json!({"vars": vars, "basis": gens}))
        }
        GroebnerOp::Degree => {
            let g = buchberger(&polys, &MonomialOrder::grevlex(n)).map_err(domain)?;
            Ok(json!({"degree": ideal_degree(&g)}))
        }
        GroebnerOp::Eliminant => {
            let var = match &a.var {
                None => n - 1,
                Some(v) => vars.iter().position(|x| x == v).ok_or_else(|| usage(format!("unknown variable {v:?}")))?,
            };
            let e = eliminant(&polys, var).map_err(domain)?;
            Ok(json!({"var": vars[var], "eliminant": io::uni_poly_json(&e, &vars[var])}))
        }
        GroebnerOp::Realcount => {
            let r = shape_lemma_real_count_with(&polys, a.seed).map_err(domain)?;
            let count = match r.outcome {
                ShapeOutcome::Count(c) => json!(c),
                ShapeOutcome::HypothesesNotSatisfied => json!("HypothesesNotSatisfied"),
            };
            Ok(json!({
                "count": count,
                "degree": r.degree,
                "var": r.variable.map(|v| vars[v].clone()),
                "eliminant": r.eliminant.as_ref().zip(r.variable).map(|(e, v)| io::uni_poly_json(e, &vars[v])),
            }))
        }
    }
}

fn circuit(c: CircuitCmd) -> Result<Value, CliError> {
    match c {
        CircuitCmd::Eliminant { system } => {
            let sys = load_circuit(&system)?;
            Ok(json!({"eliminant": io::uni_poly_json(&circuit_eliminant(&sys), "t"), "ell": sys.ell}))
        }
        CircuitCmd::Count { system } => {
            let sys = load_circuit(&system)?;
            let c = circuit_real_count(&sys);
            Ok(json!({
                "real": c.real,
                "positive": c.positive,
                "real_with_multiplicity": c.real_with_multiplicity,
                "squarefree": c.squarefree,
                "eliminant_degree": c.eliminant_degree,
            }))
        }
        CircuitCmd::Family { k, l, eps, coeffs } => {
            let eps: Vec<u8> = io::comma_list(&eps)?;
            let v = read_json(&coeffs)?;
            let polys = |key: &str| -> Result<Vec<realcount::UniPoly>, CliError> {
                let arr = v.get(key).and_then(Value::as_array).ok_or_else(|| usage(format!("missing field {key:?}")))?;
                arr.iter().map(|p| io::uni_poly(p).map(|(_, f)| f)).collect()
            };
            let fam = if v.get("g").is_some() {
                FamilySystem::from_diagonal(k, l, eps, polys("g")?)
            } else {
                let c: Vec<Vec<Rational>> = v
                    .get("c")
                    .and_then(Value::as_array)
                    .ok_or_else(|| usage("need either \"g\" or \"c\" and \"f\""))?
                    .iter()
                    .map(io::rational_list)
                    .collect::<Result<_, _>>()?;
                FamilySystem::from_coefficients(k, l, eps, &c, &polys("f")?)
            }
            .map_err(domain)?;
            Ok(json!({
                "eliminant": io::uni_poly_json(&fam.eliminant(), "t"),
                "real_count": fam.real_count(),
                "complex_count": fam.complex_count(),
                "real_bound": fam.real_bound(),
                "support": fam.support(),
            }))
        }
    }
}

fn load_circuit(path: &PathBuf) -> Result<CircuitSystem, CliError> {
    let (support, coeffs) = io::sparse(&read_json(path)?)?;
    CircuitSystem::from_general(&support, &coeffs).map_err(domain)
}

fn load_gale(system: &PathBuf, pivots: Option<&str>) -> Result<(SparseSystem, GaleSystem), CliError> {
    let (support, coeffs) = io::sparse(&read_json(system)?)?;
    let sys = SparseSystem::new(support, coeffs).map_err(domain)?;
    let g = match pivots {
        None => gale_transform(&sys),
        Some(p) => gale_transform_with(&sys, &io::comma_list::<usize>(p)?),
    }
    .map_err(domain)?;
    Ok((sys, g))
}

fn gale(c: GaleCmd) -> Result<Value, CliError> {
    match c {
        GaleCmd::Transform { system, pivots } => {
            let (_, g) = load_gale(&system, pivots.as_deref())?;
            let nz = g.normalized();
            let p: Vec<Value> = g.p.iter().map(|r| rats(r)).collect();
            let p_normalized: Vec<Value> = nz.p.iter().map(|r| rats(r)).collect();
            Ok(json!({
                "l": g.l,
                "n": g.n,
                "columns": g.columns,
                "p": p,
                "B": matrix_json(&g.b),
                "p_normalized": p_normalized,
                "scales": rats(&nz.scales),
                "gamma": rats(&nz.gamma),
                "lattice_index": big(&g.lattice_index),
                "real_transport_caveat": g.real_transport_caveat(),
            }))
        }
        GaleCmd::Pair { gale } => {
            let v = read_json(&gale)?;
            let p: Vec<Vec<Rational>> = v
                .get("p")
                .and_then(Value::as_array)
                .ok_or_else(|| usage("missing field \"p\""))?
                .iter()
                .map(io::rational_list)
                .collect::<Result<_, _>>()?;
            let b = IntMatrix::from_i64(&io::int_rows(v.get("B").ok_or_else(|| usage("missing field \"B\""))?)?);
            let b = if b.rows() == 1 && b.cols() == 0 { IntMatrix::zeros(0, p.len()) } else { b };
            let polys = cleared_pair(&p, &b).map_err(domain)?;
            let vars: Vec<String> = (1..=b.rows()).map(|i| format!("y{i}")).collect();
            let out: Vec<Value> = polys.iter().map(|f| io::multi_poly_json(f, &vars)).collect();
            Ok(json!({"polynomials": out}))
        }
        GaleCmd::Solve { system, pivots } => {
            let (sys, g) = load_gale(&system, pivots.as_deref())?;
            let sols = master_solutions(&g).map_err(domain)?;
            let mut out = Vec::new();
            for s in &sols {
                let t = master_to_sparse_f64(&g, &sys, &s.y).map_err(domain)?;
                out.push(json!({"y": s.y, "positive_chamber": s.positive, "x": t.point, "residual": t.residual}));
            }
            Ok(json!({"solutions": out, "count": sols.len(), "positive": sols.iter().filter(|s| s.positive).count()}))
        }
    }
}

fn enumerative(c: EnumCmd) -> Result<Value, CliError> {
    Ok(match c {
        EnumCmd::WronskiDegree { m, p } => json!({"m": m, "p": p, "degree": big(&wronski_degree(m, p).map_err(domain)?)}),
        EnumCmd::Sigma { m, p } => json!({"m": m, "p": p, "sigma": big(&eg_lower_bound(m, p).map_err(domain)?)}),
        EnumCmd::LogRatio { m, p } => json!({"m": m, "p": p, "log_ratio": log_ratio(m, p).map_err(domain)?}),
        EnumCmd::Kontsevich { d } => json!({"d": d, "N": big(&kontsevich(d).map_err(domain)?)}),
        EnumCmd::Kostka { content } => {
            let a: Vec<u32> = io::comma_list(&content)?;
            json!({"content": a, "kostka": big(&kostka_two_row(&a).map_err(domain)?)})
        }
        EnumCmd::DeltaTable { m, p } => {
            let t = schubert_delta(m, p).map_err(domain)?;
            let rows: Vec<Value> = t.iter().map(|(alpha, d)| json!({"alpha": alpha, "delta": big(d)})).collect();
            let top = t.iter().next_back().map(|(_, d)| big(d));
            json!({"m": m, "p": p, "table": rows, "top": top})
        }
    })
}

fn poset(a: PosetArgs) -> Result<Value, CliError> {
    let p = io::poset(&read_json(&a.poset)?)?;
    let names = |s: &[usize]| -> Vec<String> { s.iter().map(|&i| p.names[i].clone()).collect() };
    Ok(match a.op {
        PosetOp::Ideals => {
            let ideals: Vec<Vec<String>> = order_ideals(&p).map_err(domain)?.iter().map(|s| names(s)).collect();
            json!({"count": ideals.len(), "ideals": ideals})
        }
        PosetOp::Extensions => {
            let ext: Vec<Vec<String>> = linear_extensions(&p).map_err(domain)?.iter().map(|s| names(s)).collect();
            json!({"count": ext.len(), "extensions": ext})
        }
        PosetOp::SignImbalance => {
            let lambda = linear_extensions(&p).map_err(domain)?.len();
            json!({"sign_imbalance": sign_imbalance(&p).map_err(domain)?, "extensions": lambda})
        }
        PosetOp::Orientable => json!({"parity_hypothesis": parity_hypothesis(&p), "orientable": cox_orientable(&p)}),
        PosetOp::Experiment => {
            let seed = a.seed.ok_or_else(|| usage("experiment needs --seed"))?;
            let h = monte_carlo_gap(&p, a.trials, seed, a.range).map_err(domain)?;
            let counts: serde_json::Map<String, Value> = h.counts.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            json!({
                "trials": h.trials,
                "seed": seed,
                "range": a.range,
                "histogram": counts,
                "failed": h.failed,
                "redraws": h.redraws,
                "sign_imbalance": sign_imbalance(&p).map_err(domain)?,
            })
        }
    })
}
