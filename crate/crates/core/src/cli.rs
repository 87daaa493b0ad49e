//! Command line front end. `ramify --help` lists the verbs.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::connection::{self, ConnGerm, DualPuiseuxChar, IrrMode, Place};
use crate::corpus;
use crate::error::{Error, Result};
use crate::germ::{self, GoodParam};
use crate::lft::{self, LftDir, LftKind};
use crate::parse;
use crate::poly;
use crate::puiseux::Q;
use crate::resolve::{self, Execution};
use crate::stokes::{self, Stokes};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "ramify", version, about = "Invariants, Fourier transforms, resolutions and Stokes words of ramified connections")]
pub struct Cli {
    /// Truncation order for series literals, e.g. `4` or `7/2`. Connection
    /// literals keep their exact principal part when omitted; parametrizations
    /// stay exact.
    #[arg(long, global = true, value_parser = trunc_arg)]
    pub trunc: Option<Q>,
    /// Working precision in bits for Stokes directions.
    #[arg(long, global = true, default_value_t = stokes::DEFAULT_PRECISION as u32,
          value_parser = clap::value_parser!(u32).range(32..=4096))]
    pub precision: u32,
    /// Output format; errors follow it on stderr.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for `random` connection literals.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Dual Puiseux characteristic of a connection.
    Char { conn: String },
    /// Plane curve germs.
    Curve {
        #[command(subcommand)]
        op: CurveOp,
    },
    /// Characteristic, Irr(End), associated curve and Milnor number.
    Invariants { conn: String },
    /// Isomorphism test, Irr(Hom) and intersection number.
    Iso { a: String, b: String },
    /// Local Fourier transform.
    Lft(LftArgs),
    /// Resolution of the ramified singularity.
    Resolve {
        #[command(subcommand)]
        op: ResolveOp,
    },
    /// Stokes directions, orders and words.
    Stokes {
        #[command(subcommand)]
        op: StokesOp,
    },
    /// CSV census of resolvability over all characteristics in a box.
    Census {
        #[arg(long, default_value_t = 40)]
        qmax: u32,
        #[arg(long, default_value_t = 60)]
        pmax: u32,
        #[arg(long, default_value_t = 3)]
        gmax: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CurveOp {
    /// Puiseux characteristic of `param(m; φ)`.
    Char { param: String },
    /// Milnor number of a parametrization, a characteristic `(m;β,..)` or a
    /// polynomial in x, y.
    Milnor { input: String },
    /// Strict transform under one blowup.
    Blowup { param: String },
    /// Intersection multiplicity of two branches.
    Intersect { a: String, b: String },
    /// Implicit equation of a parametrization.
    Implicit { param: String },
}

#[derive(Args, Debug)]
pub struct LftArgs {
    /// `0inf`, `inf0` or `infinf`.
    #[arg(long, value_parser = dir_arg)]
    pub kind: LftDir,
    /// Apply the inverse transform.
    #[arg(long)]
    pub inverse: bool,
    /// Exact series computation or the characteristic-level rule.
    #[arg(long, value_enum, default_value_t = Level::Series)]
    pub level: Level,
    /// Also compare associated curves with the blowup side.
    #[arg(long)]
    pub check_blowup: bool,
    /// Connection, or a characteristic `(q,p;β,..)` with `--level char`.
    pub input: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Series,
    Char,
}

#[derive(Subcommand, Debug)]
pub enum ResolveOp {
    /// Decide resolvability.
    Check { input: String },
    /// Characteristic-level plan with its trace.
    Plan { input: String },
    /// Execute the plan on a connection.
    Run { conn: String },
}

#[derive(Subcommand, Debug)]
pub enum StokesOp {
    /// Basic Stokes directions in [0, 2π).
    Dirs { conn: String },
    /// Total orders of the exponential factors between directions.
    Orders { conn: String },
    /// Reduced permutation word.
    Word { conn: String },
    /// Level-wise conjugacy to the torus knot words.
    BraidCheck { conn: String },
    /// Dimension of the representation space for a dimension vector.
    RepDim {
        conn: String,
        /// Comma separated dimension vector; all ones by default.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u64>,
    },
    /// Level-wise decomposition of the representation space dimension.
    Decomp { conn: String },
}

fn trunc_arg(s: &str) -> std::result::Result<Q, String> {
    parse::parse_rational(s).map_err(|e| e.to_string())
}

fn dir_arg(s: &str) -> std::result::Result<LftDir, String> {
    s.parse::<LftDir>().map_err(|e| e.to_string())
}

/// Rendered result of one command.
pub struct Output {
    pub json: Value,
    pub text: String,
    /// Print `text` whatever the format (CSV).
    pub raw: bool,
}

impl Output {
    fn new(verb: &str, mut json: Value, text: String) -> Output {
        let obj = json.as_object_mut().expect("object output");
        obj.insert("schema".into(), json!(SCHEMA_VERSION));
        obj.insert("verb".into(), json!(verb));
        Output { json, text, raw: false }
    }

    pub fn render(&self, f: Format) -> String {
        match f {
            _ if self.raw => self.text.clone(),
            Format::Json => format!("{}\n", self.json),
            Format::Text => self.text.clone(),
        }
    }
}

pub fn error_json(e: &Error) -> Value {
    let mut err = json!({ "kind": e.kind(), "message": e.to_string() });
    if let Error::Parse { col, .. } = e {
        err["column"] = json!(col);
    }
    json!({ "schema": SCHEMA_VERSION, "error": err })
}

struct Ctx {
    trunc: Option<Q>,
    precision: usize,
    seed: u64,
}

impl Ctx {
    /// Connection literal, or `random` / `random(q,p;β,..)` drawn from the seed.
    fn conn(&self, s: &str) -> Result<ConnGerm> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("random") {
            let mut rng = corpus::rng(self.seed);
            let rest = rest.trim();
            let (d, place) = match rest.split_once("at=") {
                Some((d, p)) => (d.trim().trim_end_matches(';').trim(), p.trim()),
                None => (rest, "inf"),
            };
            let d = if d.is_empty() {
                corpus::random_dpc(&mut rng, 2..=6, 20, 2, |_| true)
            } else {
                parse::parse_dpc(d)?
            };
            let place = if place == "0" { Place::Zero } else { Place::Infinity };
            return Ok(corpus::random_conn_with(&mut rng, &d, place, corpus::ConnOptions::default()));
        }
        parse::parse_conn(t, self.trunc)
    }

    fn dpc_or_conn(&self, s: &str) -> Result<(DualPuiseuxChar, Option<ConnGerm>)> {
        if s.trim_start().starts_with('(') {
            Ok((parse::parse_dpc(s)?, None))
        } else {
            let c = self.conn(s)?;
            Ok((c.dual_puiseux_char()?, Some(c)))
        }
    }

    fn param(&self, s: &str) -> Result<GoodParam> {
        parse::parse_param(s, self.trunc)
    }
}

fn dpc_json(d: &DualPuiseuxChar) -> Value {
    json!([d.q, d.p, d.betas])
}

fn opt<T: serde::Serialize>(r: Result<T>) -> Value {
    match r {
        Ok(v) => json!(v),
        Err(_) => Value::Null,
    }
}

fn opt_text<T: std::fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("unavailable ({})", e),
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    let ctx = Ctx { trunc: cli.trunc, precision: cli.precision as usize, seed: cli.seed };
    match &cli.verb {
        Verb::Char { conn } => {
            let c = ctx.conn(conn)?;
            let d = c.dual_puiseux_char()?;
            let e = d.e_chain();
            Ok(Output::new(
                "char",
                json!({ "dpc": dpc_json(&d), "e": e }),
                format!("dpc {}\ne {:?}\n", d, e),
            ))
        }
        Verb::Curve { op } => curve(&ctx, op),
        Verb::Invariants { conn } => invariants(&ctx.conn(conn)?),
        Verb::Iso { a, b } => iso(&ctx.conn(a)?, &ctx.conn(b)?),
        Verb::Lft(a) => lft_cmd(&ctx, a),
        Verb::Resolve { op } => resolve_cmd(&ctx, op),
        Verb::Stokes { op } => stokes_cmd(&ctx, op),
        Verb::Census { qmax, pmax, gmax } => {
            let rows = resolve::census(*qmax, *pmax, *gmax);
            let mut s = String::from(resolve::CENSUS_HEADER);
            s.push('\n');
            for r in &rows {
                s.push_str(&r.csv());
                s.push('\n');
            }
            let mut out = Output::new("census", json!({ "rows": rows.len() }), s);
            out.raw = true;
            Ok(out)
        }
    }
}

fn curve(ctx: &Ctx, op: &CurveOp) -> Result<Output> {
    match op {
        CurveOp::Char { param } => {
            let p = ctx.param(param)?;
            let c = germ::puiseux_char(&p)?;
            let e = c.e_chain();
            Ok(Output::new(
                "curve char",
                json!({ "param": p.to_string(), "m": c.m, "betas": c.betas, "e": e }),
                format!("{}\nchar {}\n", p, c),
            ))
        }
        CurveOp::Milnor { input } => {
            let t = input.trim();
            if t.starts_with("param") {
                let p = ctx.param(t)?;
                let c = germ::puiseux_char(&p)?;
                let mu = germ::milnor_number(&c);
                let x = germ::milnor_cross_check(&c, &p)?;
                Ok(Output::new(
                    "curve milnor",
                    json!({ "mu": mu, "char": c.to_string(), "cross_check": x }),
                    format!("mu {}\nchar {}\ncross check {}\n", mu, c, if x.pass { "pass" } else { "FAIL" }),
                ))
            } else if t.starts_with('(') {
                let c = parse::parse_curve_char(t)?;
                let mu = germ::milnor_number(&c);
                Ok(Output::new(
                    "curve milnor",
                    json!({ "mu": mu, "char": c.to_string() }),
                    format!("mu {}\n", mu),
                ))
            } else {
                let f = parse::parse_poly(t)?;
                let mu = poly::milnor_bruteforce_auto(&f, 64)?;
                Ok(Output::new(
                    "curve milnor",
                    json!({ "mu": mu, "poly": f.to_string() }),
                    format!("mu {}\n", mu),
                ))
            }
        }
        CurveOp::Blowup { param } => {
            let p = ctx.param(param)?;
            let b = germ::blowup(&p)?;
            let cb = germ::puiseux_char(&b)?;
            Ok(Output::new(
                "curve blowup",
                json!({ "param": b.to_string(), "char": cb.to_string() }),
                format!("{}\nchar {}\n", b, cb),
            ))
        }
        CurveOp::Intersect { a, b } => {
            let (pa, pb) = (ctx.param(a)?, ctx.param(b)?);
            let i = germ::intersection_number(&pa, &pb)?;
            Ok(Output::new("curve intersect", json!({ "intersection": i }), format!("intersection {}\n", i)))
        }
        CurveOp::Implicit { param } => {
            let p = ctx.param(param)?;
            let f = p.implicit_polynomial()?;
            Ok(Output::new("curve implicit", json!({ "poly": f.to_string() }), format!("{}\n", f)))
        }
    }
}

fn invariants(c: &ConnGerm) -> Result<Output> {
    let d = c.dual_puiseux_char()?;
    let irr_f = connection::irr_end(c, IrrMode::Formula)?;
    let irr_s = connection::irr_end(c, IrrMode::Series)?;
    let curve = c.associated_curve();
    let curve_char = curve.as_ref().map_err(Clone::clone).and_then(germ::puiseux_char);
    let dual_char = connection::dpc_to_curve_char(&d);
    let mu_irr = connection::milnor_via_irr(c);
    let mu_char = dual_char.as_ref().map(germ::milnor_number).map_err(Clone::clone);
    let json = json!({
        "conn": c.to_string(),
        "dpc": dpc_json(&d),
        "e": d.e_chain(),
        "irr_end": { "formula": irr_f, "series": irr_s },
        "curve": opt(curve.as_ref().map(|p| p.to_string()).map_err(Clone::clone)),
        "curve_char": opt(curve_char.as_ref().map(|p| p.to_string()).map_err(Clone::clone)),
        "milnor_via_irr": opt(mu_irr.clone()),
        "milnor": opt(mu_char.clone()),
    });
    let mut t = String::new();
    let _ = writeln!(t, "conn {}", c);
    let _ = writeln!(t, "dpc {}  e {:?}", d, d.e_chain());
    let _ = writeln!(t, "Irr(End) {} (formula), {} (series)", irr_f, irr_s);
    let _ = writeln!(t, "curve {}", opt_text(&curve));
    let _ = writeln!(t, "curve char {}", opt_text(&curve_char));
    let _ = writeln!(t, "milnor {} (characteristic), {} (Irr)", opt_text(&mu_char), opt_text(&mu_irr));
    Ok(Output::new("invariants", json, t))
}

fn iso(a: &ConnGerm, b: &ConnGerm) -> Result<Output> {
    let same = connection::is_isomorphic(a, b)?;
    let hom = connection::irr_hom(a, b)?;
    let (i_irr, i_curve) = if same {
        (Value::Null, Value::Null)
    } else {
        (
            opt(connection::intersection_via_irr(a, b)),
            opt(connection::curve_intersection(a, b)),
        )
    };
    let text = format!(
        "isomorphic {}\nIrr(Hom) {}\nintersection {} (Irr), {} (curves)\n",
        same, hom, i_irr, i_curve
    );
    Ok(Output::new(
        "iso",
        json!({ "isomorphic": same, "irr_hom": hom, "intersection_via_irr": i_irr, "curve_intersection": i_curve }),
        text,
    ))
}

fn lft_cmd(ctx: &Ctx, a: &LftArgs) -> Result<Output> {
    let k = if a.inverse { LftKind::inverse_of(a.kind) } else { LftKind::forward(a.kind) };
    match a.level {
        Level::Char => {
            let (d, _) = ctx.dpc_or_conn(&a.input)?;
            let out = lft::lft_char(k, &d)?;
            Ok(Output::new(
                "lft",
                json!({ "kind": k.to_string(), "level": "char", "input": dpc_json(&d), "dpc": dpc_json(&out) }),
                format!("{} {} -> {}\n", k, d, out),
            ))
        }
        Level::Series => {
            let c = ctx.conn(&a.input)?;
            let c = if c.place() == k.place_in() { c } else { c.at(k.place_in()) };
            let d = c.dual_puiseux_char()?;
            let char_out = lft::lft_char(k, &d)?;
            let mut json = json!({ "kind": k.to_string(), "level": "series", "input": c.to_string(), "char": dpc_json(&char_out) });
            let mut t = String::new();
            match lft::lft_series(k, &c) {
                Ok(o) => {
                    let od = o.dual_puiseux_char()?;
                    json["output"] = json!(o.to_string());
                    json["dpc"] = dpc_json(&od);
                    let _ = writeln!(t, "{}\ndpc {}", o, od);
                }
                Err(e @ Error::NotRepresentable(_)) => {
                    json["output"] = Value::Null;
                    json["unavailable"] = json!(e.to_string());
                    let _ = writeln!(t, "series unavailable: {}\ndpc {} (characteristic level)", e, char_out);
                }
                Err(e) => return Err(e),
            }
            if a.check_blowup && !a.inverse {
                let r = lft::check_fourier_blowup(k, &c)?;
                let _ = writeln!(t, "blowup check {}: {} vs {}", if r.pass { "pass" } else { "FAIL" }, r.lhs, r.rhs);
                json["blowup"] = json!(r);
            }
            Ok(Output::new("lft", json, t))
        }
    }
}

fn resolve_cmd(ctx: &Ctx, op: &ResolveOp) -> Result<Output> {
    match op {
        ResolveOp::Check { input } => {
            let (d, _) = ctx.dpc_or_conn(input)?;
            let ok = resolve::is_resolvable(&d);
            let v = resolve::first_violation(&d);
            Ok(Output::new(
                "resolve check",
                json!({ "dpc": dpc_json(&d), "resolvable": ok, "violated": v }),
                match v {
                    None => format!("{} resolvable\n", d),
                    Some(i) => format!("{} not resolvable: condition fails at i = {}\n", d, i),
                },
            ))
        }
        ResolveOp::Plan { input } => {
            let (d, _) = ctx.dpc_or_conn(input)?;
            let p = resolve::plan(&d);
            Ok(Output::new("resolve plan", json!({ "plan": p }), plan_text(&p)))
        }
        ResolveOp::Run { conn } => {
            let c = ctx.conn(conn)?;
            let p = resolve::plan(&c.dual_puiseux_char()?);
            if !p.success {
                return Err(Error::PreconditionViolated(format!("{} is not resolvable", p.initial)));
            }
            let mut t = plan_text(&p);
            let json = match resolve::execute_series(&p, &c)? {
                Execution::Done(r) => {
                    let _ = writeln!(t, "result {}", r);
                    json!({ "plan": p, "result": r.to_string(), "unavailable": Value::Null })
                }
                Execution::Unavailable { step, reason, partial } => {
                    let _ = writeln!(t, "series unavailable at step {}: {}", step + 1, reason);
                    let partial: Vec<String> = partial.iter().map(|c| c.to_string()).collect();
                    json!({ "plan": p, "result": Value::Null, "unavailable": { "step": step + 1, "reason": reason }, "partial": partial })
                }
            };
            Ok(Output::new("resolve run", json, t))
        }
    }
}

fn plan_text(p: &resolve::ResolutionPlan) -> String {
    let mut t = format!("start {}\n", p.initial);
    for (m, d) in p.moves.iter().zip(&p.trace) {
        let _ = writeln!(t, "  {} -> {}", m, d);
    }
    let _ = writeln!(
        t,
        "{} after {} moves, terminal {}",
        if p.success { "resolved" } else { "stuck" },
        p.len(),
        p.terminal
    );
    t
}

fn stokes_cmd(ctx: &Ctx, op: &StokesOp) -> Result<Output> {
    let prec = ctx.precision;
    match op {
        StokesOp::Dirs { conn } => {
            let c = ctx.conn(conn)?;
            let dirs = stokes::stokes_directions(&c, prec)?;
            let names = stokes::describe_directions(&dirs);
            let values: Vec<f64> = dirs.iter().map(|d| d.approx).collect();
            let pairs: Vec<&Vec<(usize, usize)>> = dirs.iter().map(|d| &d.pairs).collect();
            Ok(Output::new(
                "stokes dirs",
                json!({ "h": dirs.len(), "dirs": names, "values": values, "pairs": pairs }),
                format!("{} directions: {}\n", dirs.len(), names.join(", ")),
            ))
        }
        StokesOp::Orders { conn } => {
            let s = stokes::order_sequence(&ctx.conn(conn)?, prec)?;
            let rendered: Vec<String> = (0..s.orders.len()).map(|i| s.render_order(i)).collect();
            Ok(Output::new(
                "stokes orders",
                json!({ "n": s.n(), "h": s.h(), "orders": s.orders, "rendered": rendered }),
                format!("{}\n", s),
            ))
        }
        StokesOp::Word { conn } => {
            let s = stokes::order_sequence(&ctx.conn(conn)?, prec)?;
            let raw = stokes::to_permutations(&s);
            let red = stokes::reduce(&raw);
            Ok(Output::new(
                "stokes word",
                json!({ "n": red.n, "word": red.names(), "raw": raw.names(), "transpositions": red.transpositions() }),
                format!("{}\n", red.names().join(" ")),
            ))
        }
        StokesOp::BraidCheck { conn } => {
            let r = stokes::iterated_braid_check(&ctx.conn(conn)?, prec)?;
            let mut t = format!("{} {}\n", r.dpc, if r.pass { "pass" } else { "FAIL" });
            for l in &r.levels {
                let _ = writeln!(
                    t,
                    "  level {} (beta {}): {} ~ {} {}",
                    l.level,
                    l.beta,
                    l.word.join(" "),
                    l.reference.join(" "),
                    match (&l.witness, &l.split) {
                        (Some(w), _) => format!("witness {:?}", w),
                        (None, Some(m)) => format!(
                            "not conjugate; split word conjugate after rotation {} with witness {:?}",
                            m.rotation, m.witness
                        ),
                        (None, None) => "not conjugate".into(),
                    }
                );
            }
            Ok(Output::new("stokes braid-check", json!({ "report": r }), t))
        }
        StokesOp::RepDim { conn, alpha } => {
            let st = Stokes::new(&ctx.conn(conn)?, prec)?;
            let n = st.full.n();
            let alpha = if alpha.is_empty() { vec![1; n] } else { alpha.clone() };
            if alpha.len() != n {
                return Err(Error::PreconditionViolated(format!("alpha needs {} entries, got {}", n, alpha.len())));
            }
            let dim = stokes::rep_dimension(&st.full, &alpha);
            Ok(Output::new("stokes rep-dim", json!({ "alpha": alpha, "rep_dim": dim }), format!("{}\n", dim)))
        }
        StokesOp::Decomp { conn } => {
            let r = stokes::decomposition_check(&ctx.conn(conn)?, prec)?;
            let t = format!(
                "{}: {} = {:?} (fibers) = {:?} (tilde), Irr(End) {} {}\n",
                r.dpc,
                r.lhs,
                r.by_fibers,
                r.by_tilde,
                r.irr_end,
                if r.pass { "pass" } else { "FAIL" }
            );
            Ok(Output::new("stokes decomp", json!({ "report": r }), t))
        }
    }
}
