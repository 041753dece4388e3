//! Command-line front end. Every run prints one JSON report to stdout
//! (or a flattened `key: value` listing with `--pretty`).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::error::LatticeError;
use crate::lattice::{self, LatticeBasis};
use crate::minima::{self, BoundCheck, Norm, DEFAULT_BUDGET};
use crate::rational::{self, Rat};
use crate::{gso, numtheory, packing, voronoi};

/// Subcommand → library operations it exposes.
pub const DISPATCH: &[(&str, &[&str])] = &[
    ("det", &["make_lattice", "determinant_squared", "same_lattice", "point_count_ratio"]),
    ("gso", &["gram_schmidt", "gso_triangular", "gso_min_norm_sq"]),
    ("svp", &["shortest_vector", "enumerate_below"]),
    ("minima", &["successive_minima"]),
    ("bounds", &["bounds_report"]),
    ("hermite", &["hermite_exact", "hermite_bounds", "ball_volume"]),
    ("density", &["packing_density", "hermite_invariant"]),
    ("hlawka", &["minkowski_hlawka_bound"]),
    ("voronoi", &["relevant_vectors", "in_voronoi_cell"]),
    ("radii", &["radius_report", "covering_radius_estimate"]),
    ("two-squares", &["sqrt_minus_one_mod_p", "two_squares"]),
    ("four-squares", &["four_squares", "yz_witness", "euler_four_square_product"]),
    ("approx", &["dirichlet_approx"]),
    ("collide", &["reduce_mod_mesh", "blichfeldt_collision"]),
];

#[derive(Debug, Parser)]
#[command(name = "geonum", version, about = "Exact lattice invariants and geometry-of-numbers bounds")]
struct Cli {
    /// Human-readable listing instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Node cap for every lattice enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    enum_budget: u64,
    /// Norm for `svp`.
    #[arg(long, global = true, default_value = "l2")]
    norm: String,
    /// Grid points per axis for the covering radius estimate (`radii`).
    #[arg(long, global = true)]
    grid: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Determinant; optionally compare with another basis or count lattice points in a ball.
    Det {
        basis: PathBuf,
        #[arg(long)]
        same_as: Option<PathBuf>,
        #[arg(long)]
        count_radius: Option<String>,
    },
    /// Gram–Schmidt data and the orthonormal-frame matrix.
    Gso { basis: PathBuf },
    /// Shortest vector; `--enumerate R2` also lists all vectors with squared norm ≤ R2.
    Svp {
        basis: PathBuf,
        #[arg(long)]
        enumerate: Option<String>,
    },
    /// Successive minima with witnesses.
    Minima { basis: PathBuf },
    /// Minkowski-type inequalities with exact verdicts.
    Bounds { basis: PathBuf },
    /// Hermite constant table entry and bounds for dimension n.
    Hermite { n: String },
    /// Packing density and Hermite invariant of a lattice.
    Density { basis: PathBuf },
    /// Minkowski–Hlawka density bound ζ(n)/2^(n−1).
    Hlawka { n: String },
    /// Relevant Voronoï vectors; `--point` tests cell membership.
    Voronoi {
        basis: PathBuf,
        #[arg(long)]
        point: Option<String>,
    },
    /// Packing radius and covering radius bounds.
    Radii { basis: PathBuf },
    /// p = a² + b² for primes p ≡ 1 (mod 4).
    TwoSquares { p: String },
    /// x = a² + b² + c² + d².
    FourSquares { x: String },
    /// Rational approximation p/q of alpha with q ≤ Q.
    Approx {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        q: String,
    },
    /// Reduce points into the fundamental mesh and find the first colliding pair.
    Collide { basis: PathBuf, points: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Det { .. } => "det",
            Command::Gso { .. } => "gso",
            Command::Svp { .. } => "svp",
            Command::Minima { .. } => "minima",
            Command::Bounds { .. } => "bounds",
            Command::Hermite { .. } => "hermite",
            Command::Density { .. } => "density",
            Command::Hlawka { .. } => "hlawka",
            Command::Voronoi { .. } => "voronoi",
            Command::Radii { .. } => "radii",
            Command::TwoSquares { .. } => "two-squares",
            Command::FourSquares { .. } => "four-squares",
            Command::Approx { .. } => "approx",
            Command::Collide { .. } => "collide",
        }
    }
}

/// Exit status and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(LatticeError),
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        Failure::Domain(e)
    }
}

type CmdResult = std::result::Result<Value, Failure>;

/// 12 significant digits.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    serde_json::Number::from_f64(rounded).map(Value::Number).unwrap_or(Value::Null)
}

fn rat(r: &Rat) -> Value {
    Value::String(rational::render(r))
}

/// Inserts `key: "p/q"` and `key_approx: float`.
fn put_rat(m: &mut Map<String, Value>, key: &str, r: &Rat) {
    m.insert(key.to_string(), rat(r));
    m.insert(format!("{key}_approx"), float(rational::to_f64(r)));
}

fn rat_vec(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn matrix_value(rows: &[Vec<Rat>]) -> Value {
    Value::Array(rows.iter().map(|r| rat_vec(r)).collect())
}

fn verdicts(checks: &[BoundCheck]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "statement": c.statement,
                    "lhs": float(c.lhs),
                    "rhs": float(c.rhs),
                    "holds": c.holds,
                    "precision": c.precision.name(),
                })
            })
            .collect(),
    )
}

fn read_text(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_basis(path: &Path) -> std::result::Result<LatticeBasis, Failure> {
    let rows = lattice::parse_matrix(&read_text(path)?)?;
    Ok(lattice::make_lattice(rows)?)
}

fn scalar(text: &str) -> std::result::Result<Rat, Failure> {
    Ok(rational::parse_rational(text)?)
}

fn integer_arg(text: &str, what: &str) -> std::result::Result<u64, Failure> {
    let r = scalar(text)?;
    if !r.is_integer() {
        return Err(Failure::Usage(format!("{what} must be an integer, got {text}")));
    }
    num_traits::ToPrimitive::to_u64(&r.to_integer())
        .ok_or_else(|| Failure::Usage(format!("{what} must be a nonnegative integer, got {text}")))
}

fn parse_point(text: &str) -> std::result::Result<Vec<Rat>, Failure> {
    text.split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(|s| Ok(rational::parse_rational(s)?))
        .collect()
}

fn basis_inputs(path: &Path, l: &LatticeBasis) -> Value {
    json!({
        "basis_file": path.display().to_string(),
        "basis": matrix_value(l.rows()),
        "rank": l.rank(),
        "dim": l.ambient_dim(),
    })
}

fn coeffs_value(c: &[i64]) -> Value {
    Value::Array(c.iter().map(|&v| json!(v)).collect())
}

struct Ctx {
    budget: u64,
    norm: String,
    grid: Option<String>,
}

fn report(command: &str, inputs: Value, results: Map<String, Value>, checks: Option<&[BoundCheck]>) -> Value {
    let mut top = Map::new();
    top.insert("command".into(), json!(command));
    top.insert("inputs".into(), inputs);
    top.insert("results".into(), Value::Object(results));
    if let Some(c) = checks {
        top.insert("verdicts".into(), verdicts(c));
    }
    Value::Object(top)
}

fn execute(cmd: &Command, ctx: &Ctx) -> CmdResult {
    let name = cmd.name();
    let budget = ctx.budget;
    match cmd {
        Command::Det { basis, same_as, count_radius } => {
            let l = load_basis(basis)?;
            let mut r = Map::new();
            let d = lattice::determinant(&l);
            put_rat(&mut r, "det_sq", &d.squared);
            r.insert("det".into(), d.exact.as_ref().map(rat).unwrap_or(Value::Null));
            r.insert("det_approx".into(), float(d.approx));
            r.insert("complete".into(), json!(l.is_complete()));
            let mut inputs = basis_inputs(basis, &l);
            if let Some(other) = same_as {
                let b = load_basis(other)?;
                let s = lattice::same_lattice(&l, &b)?;
                r.insert("same_lattice".into(), json!(s.same));
                r.insert(
                    "unimodular_witness".into(),
                    s.witness
                        .map(|w| {
                            Value::Array(
                                w.matrix
                                    .iter()
                                    .map(|row| Value::Array(row.iter().map(|v| json!(v.to_string())).collect()))
                                    .collect(),
                            )
                        })
                        .unwrap_or(Value::Null),
                );
                inputs["other_basis"] = matrix_value(b.rows());
            }
            if let Some(radius) = count_radius {
                let radius = scalar(radius)?;
                let c = lattice::point_count_ratio(&l, &radius)?;
                r.insert(
                    "point_count".into(),
                    json!({
                        "radius": rat(&radius),
                        "count": c.count,
                        "ball_volume": float(c.ball_volume),
                        "ratio": float(c.ratio),
                    }),
                );
            }
            Ok(report(name, inputs, r, None))
        }
        Command::Gso { basis } => {
            let l = load_basis(basis)?;
            let g = gso::gram_schmidt(&l);
            let mut r = Map::new();
            r.insert("tilde_vectors".into(), matrix_value(&g.tilde_vectors));
            r.insert("mu".into(), matrix_value(&g.mu));
            r.insert("tilde_norms_sq".into(), rat_vec(&g.tilde_norms_sq));
            let frame = gso::gso_triangular(&l);
            r.insert(
                "frame".into(),
                Value::Array(
                    frame
                        .iter()
                        .map(|row| {
                            Value::Array(
                                row.iter()
                                    .map(|e| json!({"square": rat(&e.square), "negative": e.negative, "approx": float(e.approx)}))
                                    .collect(),
                            )
                        })
                        .collect(),
                ),
            );
            put_rat(&mut r, "min_norm_sq", &gso::gso_min_norm_sq(&l));
            Ok(report(name, basis_inputs(basis, &l), r, None))
        }
        Command::Svp { basis, enumerate } => {
            let l = load_basis(basis)?;
            let norm: Norm = ctx.norm.parse()?;
            let s = minima::shortest_vector(&l, norm, budget)?;
            let mut r = Map::new();
            put_rat(&mut r, "lambda1_sq", &s.lambda1_sq);
            r.insert("coeffs".into(), coeffs_value(&s.coeffs));
            r.insert("vector".into(), rat_vec(&s.vector));
            let mut inputs = basis_inputs(basis, &l);
            inputs["norm"] = json!(norm.name());
            if let Some(radius) = enumerate {
                let radius = scalar(radius)?;
                let found = minima::enumerate_below(&l, &radius, norm, budget)?;
                r.insert(
                    "enumerated".into(),
                    Value::Array(
                        found
                            .iter()
                            .map(|v| json!({"coeffs": coeffs_value(&v.coeffs), "norm_sq": rat(&v.norm_sq)}))
                            .collect(),
                    ),
                );
                inputs["enumerate_r_sq"] = rat(&radius);
            }
            Ok(report(name, inputs, r, None))
        }
        Command::Minima { basis } => {
            let l = load_basis(basis)?;
            let m = minima::successive_minima(&l, budget)?;
            let mut r = Map::new();
            r.insert("lambda_sq".into(), rat_vec(&m.lambda_sq));
            r.insert(
                "lambda_approx".into(),
                Value::Array(m.lambda_sq.iter().map(|x| float(rational::to_f64(x).sqrt())).collect()),
            );
            r.insert("witnesses".into(), Value::Array(m.witnesses.iter().map(|w| coeffs_value(w)).collect()));
            r.insert(
                "witness_vectors".into(),
                Value::Array(m.witnesses.iter().map(|w| rat_vec(&l.vector(w))).collect()),
            );
            Ok(report(name, basis_inputs(basis, &l), r, None))
        }
        Command::Bounds { basis } => {
            let l = load_basis(basis)?;
            let b = minima::bounds_report(&l, budget)?;
            let mut r = Map::new();
            put_rat(&mut r, "det_sq", &b.det_sq);
            put_rat(&mut r, "lambda1_sq", &b.lambda1_sq);
            put_rat(&mut r, "lambda1_linf_sq", &b.lambda1_linf_sq);
            put_rat(&mut r, "gso_min_sq", &b.gso_min_sq);
            r.insert("lambda_sq".into(), rat_vec(&b.minima.lambda_sq));
            r.insert("all_hold".into(), json!(b.all_hold()));
            Ok(report(name, basis_inputs(basis, &l), r, Some(&b.checks)))
        }
        Command::Hermite { n } => {
            let n = integer_arg(n, "n")? as usize;
            let b = packing::hermite_bounds(n)?;
            let mut r = Map::new();
            match &b.exact_gamma_n_pow_n {
                Some(g) => {
                    put_rat(&mut r, "gamma_n_pow_n", g);
                    r.insert("gamma_n".into(), float(b.exact_gamma().unwrap_or(f64::NAN)));
                }
                None => {
                    r.insert("gamma_n_pow_n".into(), Value::Null);
                }
            }
            r.insert("blichfeldt_upper".into(), float(b.blichfeldt_upper));
            r.insert("kitaoka_upper".into(), float(b.kitaoka_upper));
            r.insert("asymptotic_lower".into(), float(b.asymptotic_lower));
            r.insert("asymptotic_upper".into(), float(b.asymptotic_upper));
            r.insert("approx".into(), float(b.approx));
            r.insert("unit_ball_volume".into(), float(packing::ball_volume(n as u32, 1.0)));
            Ok(report(name, json!({"n": n}), r, None))
        }
        Command::Density { basis } => {
            let l = load_basis(basis)?;
            let mut r = Map::new();
            put_rat(&mut r, "hermite_invariant_pow_n", &packing::hermite_invariant_pow_n(&l, budget)?);
            r.insert("hermite_invariant".into(), float(packing::hermite_invariant(&l, budget)?));
            r.insert("packing_density".into(), float(packing::packing_density(&l, budget)?));
            Ok(report(name, basis_inputs(basis, &l), r, None))
        }
        Command::Hlawka { n } => {
            let n = integer_arg(n, "n")?;
            let n = u32::try_from(n).map_err(|_| Failure::Usage("n too large".into()))?;
            let mut r = Map::new();
            r.insert("bound".into(), float(packing::minkowski_hlawka_bound(n)?));
            r.insert("zeta".into(), float(packing::zeta(n)?));
            Ok(report(name, json!({"n": n}), r, None))
        }
        Command::Voronoi { basis, point } => {
            let l = load_basis(basis)?;
            let set = voronoi::relevant_vectors(&l, budget)?;
            let mut r = Map::new();
            r.insert(
                "relevant".into(),
                Value::Array(
                    set.vectors
                        .iter()
                        .map(|v| {
                            json!({
                                "coeffs": coeffs_value(&v.coeffs),
                                "vector": rat_vec(&v.vector),
                                "norm_sq": rat(&v.norm_sq),
                                "coset": v.coset,
                            })
                        })
                        .collect(),
                ),
            );
            r.insert("count_with_signs".into(), json!(set.count_with_signs()));
            let mut inputs = basis_inputs(basis, &l);
            if let Some(p) = point {
                let x = parse_point(p)?;
                if x.len() != l.ambient_dim() {
                    return Err(Failure::Domain(LatticeError::ShapeMismatch(format!(
                        "point has length {}, lattice dimension is {}",
                        x.len(),
                        l.ambient_dim()
                    ))));
                }
                r.insert("in_cell".into(), json!(set.contains(&x)));
                inputs["point"] = rat_vec(&x);
            }
            Ok(report(name, inputs, r, None))
        }
        Command::Radii { basis } => {
            let l = load_basis(basis)?;
            let grid = match &ctx.grid {
                Some(g) => Some(integer_arg(g, "grid")? as usize),
                None => None,
            };
            let rr = voronoi::radius_report(&l, grid, budget)?;
            let mut r = Map::new();
            put_rat(&mut r, "packing_radius_sq", &rr.packing_radius_sq);
            put_rat(&mut r, "lambda_lower_sq", &rr.lambda_lower_sq);
            r.insert("volume_lower_sq".into(), float(rr.volume_lower_sq));
            r.insert("covering_lower_sq".into(), float(rr.covering_lower_sq));
            put_rat(&mut r, "covering_upper_sq", &rr.covering_upper_sq);
            r.insert("covering_estimate".into(), rr.covering_estimate.map(float).unwrap_or(Value::Null));
            let mut inputs = basis_inputs(basis, &l);
            inputs["grid"] = json!(grid);
            let checks = (!rr.checks.is_empty()).then_some(rr.checks.as_slice());
            Ok(report(name, inputs, r, checks))
        }
        Command::TwoSquares { p } => {
            let p = integer_arg(p, "p")?;
            let (t, trace) = numtheory::two_squares_traced(p)?;
            let mut r = Map::new();
            r.insert("a".into(), json!(t.a));
            r.insert("b".into(), json!(t.b));
            if let Some(trace) = trace {
                r.insert("q".into(), json!(trace.q));
                r.insert("det_sq".into(), rat(&trace.det_sq));
                r.insert("lambda1_sq".into(), rat(&trace.lambda1_sq));
                r.insert("coeffs".into(), coeffs_value(&trace.coeffs));
            }
            Ok(report(name, json!({"p": p}), r, None))
        }
        Command::FourSquares { x } => {
            let x = integer_arg(x, "x")?;
            let (f, steps) = numtheory::four_squares_traced(x)?;
            let mut r = Map::new();
            r.insert("parts".into(), json!(f.parts));
            r.insert(
                "prime_steps".into(),
                Value::Array(
                    steps
                        .iter()
                        .map(|s| json!({"p": s.p, "y": s.y, "z": s.z, "vector": s.vector, "norm_sq": s.norm_sq}))
                        .collect(),
                ),
            );
            Ok(report(name, json!({"x": x}), r, None))
        }
        Command::Approx { alpha, q } => {
            let alpha = scalar(alpha)?;
            let q_max = integer_arg(q, "Q")?;
            let a = numtheory::dirichlet_approx(&alpha, q_max)?;
            let mut r = Map::new();
            r.insert("p".into(), json!(a.p.to_string()));
            r.insert("q".into(), json!(a.q));
            put_rat(&mut r, "error", &a.error());
            r.insert("within_1_over_q_max".into(), json!(a.satisfies_bound()));
            r.insert("within_1_over_q_q_max".into(), json!(a.satisfies_strong_bound()));
            Ok(report(name, json!({"alpha": rat(&alpha), "q_max": q_max}), r, None))
        }
        Command::Collide { basis, points } => {
            let l = load_basis(basis)?;
            let pts = lattice::parse_matrix(&read_text(points)?)?;
            let mut reduced = Vec::with_capacity(pts.len());
            for p in &pts {
                let m = lattice::reduce_mod_mesh(p, &l)?;
                reduced.push(json!({
                    "reduced": rat_vec(&m.reduced),
                    "offset": m.offset.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
                }));
            }
            let mut r = Map::new();
            r.insert("mesh".into(), Value::Array(reduced));
            r.insert(
                "collision".into(),
                lattice::blichfeldt_collision(&pts, &l)?.map(|(i, j)| json!([i, j])).unwrap_or(Value::Null),
            );
            let mut inputs = basis_inputs(basis, &l);
            inputs["points"] = matrix_value(&pts);
            Ok(report(name, inputs, r, None))
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, out);
            }
        }
        other => {
            out.push_str(&format!("{prefix:<40} {other}\n"));
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        let mut s = String::new();
        flatten("", v, &mut s);
        s
    } else {
        let mut s = serde_json::to_string(v).expect("json");
        s.push('\n');
        s
    }
}

/// Parses `argv` (including the program name) and runs one subcommand.
/// Exit status: 0 success, 1 domain error, 2 usage error.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let ctx = Ctx { budget: cli.enum_budget, norm: cli.norm.clone(), grid: cli.grid.clone() };
    let name = cli.command.name();
    match execute(&cli.command, &ctx) {
        Ok(v) => Outcome { code: 0, stdout: render(&v, cli.pretty), stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("usage error: {msg}\n") },
        Err(Failure::Domain(e)) => {
            let v = json!({
                "command": name,
                "error": {"kind": e.name(), "message": e.to_string()},
            });
            Outcome { code: 1, stdout: render(&v, cli.pretty), stderr: format!("error: {}: {e}\n", e.name()) }
        }
    }
}
