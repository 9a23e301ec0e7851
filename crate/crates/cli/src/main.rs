mod args;
mod out;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use theta_core::combine::combine_record;
use theta_core::correspondence::{phi, psi};
use theta_core::curve::Order;
use theta_core::fermat::{orbit_report, step, DEFAULT_MAX_ORBIT_STEPS};
use theta_core::geometry::{generate_from_mn, isoceles_triples, triangle_of, Isoceles};
use theta_core::numeric::parse_rat;
use theta_core::search::{decide, enumerate_table, search_points, Verdict, WitnessSource};
use theta_core::torsion::{atlas, classify_case, family_instance, torsion_subgroup, CaseLabel};
use theta_core::{Angle, Curve, Error, Int, Result, ThetaTriple};

use args::{parse_point, parse_triple, Config, Format};

const DEFAULT_HEIGHT_BOUND: u64 = 100;
const DEFAULT_MN_BOUND: u64 = 10;

#[derive(Parser)]
#[command(name = "theta", version, about = "Exact arithmetic on theta-congruent number curves")]
struct Cli {
    /// key=value file with defaults for bounds and output format
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct AngleArgs {
    /// denominator of cos(theta) = s/r
    #[arg(long, allow_hyphen_values = true)]
    r: Int,
    /// numerator of cos(theta) = s/r
    #[arg(long, allow_hyphen_values = true)]
    s: Int,
}

#[derive(Args, Clone)]
struct CurveArgs {
    #[command(flatten)]
    angle: AngleArgs,
    #[arg(long = "N", allow_hyphen_values = true)]
    n: Int,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a triple satisfies both relations and report its N
    Verify {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long = "N", allow_hyphen_values = true)]
        n: Option<Int>,
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
    },
    /// Side lengths of the triangle of a triple
    Triangle {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
    },
    /// Triple from the (m, n) parametrization
    Generate {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
    /// Triples with |a| = |b|
    Isoceles {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Point of a triple
    Psi {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
    },
    /// Triple of a point
    Phi {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Sum of two points
    Add {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    Double {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// k times a point
    Mul {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: Int,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Order of a point, or "infinite" past 12
    Order {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// One Fermat step
    Next {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
    },
    /// Repeated Fermat steps
    Orbit {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
        #[arg(long, default_value_t = 3)]
        steps: u64,
        #[arg(long)]
        max_steps: Option<u64>,
    },
    /// Third triple from two triples for the same N
    Combine {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long, allow_hyphen_values = true)]
        t0: String,
        #[arg(long, allow_hyphen_values = true)]
        t1: String,
    },
    /// Torsion subgroup of one curve, or a sweep with --r-max and --N-max
    Torsion {
        #[arg(long, allow_hyphen_values = true)]
        r: Option<Int>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<Int>,
        #[arg(long = "N", allow_hyphen_values = true)]
        n: Option<Int>,
        #[arg(long)]
        r_max: Option<u64>,
        #[arg(long = "N-max")]
        n_max: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Case label of the torsion classification
    Classify {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Member of a constructive torsion family
    Family {
        #[arg(long)]
        case: String,
        #[arg(long, allow_hyphen_values = true)]
        u: Int,
        #[arg(long, allow_hyphen_values = true)]
        v: Int,
    },
    /// Decide congruence by torsion, then by bounded point search
    Congruent {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Points with x = p/q^2, |p| <= bound, q^2 <= bound
    Search {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Smallest witness per N over integer (m, n) up to a bound
    Enumerate {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

enum Output {
    Json(Value),
    Text(String),
    Fail(Value),
}

fn angle_of(a: &AngleArgs) -> Result<Angle> {
    Angle::new(a.s.clone(), a.r.clone())
}

fn curve_of(c: &CurveArgs) -> Result<Curve> {
    Curve::new(&angle_of(&c.angle)?, &c.n)
}

fn triple_of(angle: &Angle, text: &str) -> Result<ThetaTriple> {
    let (a, b, c) = parse_triple(text)?;
    ThetaTriple::new(angle, a, b, c)
}

fn with_context(t: &ThetaTriple) -> Value {
    let mut m = out::context(t);
    if let Value::Object(abc) = out::abc(t) {
        m.extend(abc);
    }
    Value::Object(m)
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let internal = |e: csv::Error| Error::InternalInconsistency(e.to_string());
    w.write_record(header).map_err(internal)?;
    for row in rows {
        w.write_record(&row).map_err(internal)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InternalInconsistency(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InternalInconsistency(e.to_string()))
}

fn run(cli: Cli) -> Result<Output> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let json = |v: Value| Ok(Output::Json(v));
    match cli.command {
        Command::Verify { angle, n, triple } => {
            let t = triple_of(&angle_of(&angle)?, &triple)?;
            match n {
                Some(n) if n != *t.n() => {
                    Ok(Output::Fail(json!({ "ok": false, "N": out::int(t.n()), "expected": out::int(&n) })))
                }
                _ => json(json!({ "ok": true, "N": out::int(t.n()) })),
            }
        }
        Command::Triangle { angle, triple } => {
            let t = triple_of(&angle_of(&angle)?, &triple)?;
            let (a, b, c) = triangle_of(&t)?;
            json(json!({
                "sides": [out::rat(&a), out::rat(&b), out::rat(&c)],
                "cos": out::rat(&t.angle().cos()),
                "N": out::int(t.n()),
                "area_squared": out::int(&t.area_squared()),
            }))
        }
        Command::Generate { angle, m, n } => {
            let angle = angle_of(&angle)?;
            let p = generate_from_mn(&angle, &parse_rat(&m)?, &parse_rat(&n)?)?;
            let mut v = json!({
                "X": out::rat(&p.x),
                "Y": out::rat(&p.y),
                "Z": out::rat(&p.z),
                "N0": out::rat(&p.n0),
            });
            match p.into_triple() {
                Ok(t) => v["triple"] = with_context(&t),
                Err(e @ Error::Degenerate(_)) => {
                    v["triple"] = Value::Null;
                    v["reason"] = json!(e.to_string());
                }
                Err(e) => return Err(e),
            }
            json(v)
        }
        Command::Isoceles { curve } => {
            let angle = angle_of(&curve.angle)?;
            let list = isoceles_triples(&angle, &curve.n)?;
            let items: Vec<Value> = list
                .iter()
                .map(|t| {
                    json!({
                        "a": out::rat(&t.a),
                        "b": out::rat(&t.b),
                        "c": out::rat(&t.c),
                        "pattern": match t.pattern {
                            Isoceles::Equal => "a=b",
                            Isoceles::Opposite => "a=-b",
                        },
                        "theta_triple": t.as_theta_triple(&angle).is_ok(),
                    })
                })
                .collect();
            json(json!({ "N": out::int(&curve.n), "triples": items }))
        }
        Command::Psi { angle, triple } => {
            let t = triple_of(&angle_of(&angle)?, &triple)?;
            json(out::point(&psi(&t)?))
        }
        Command::Phi { curve, point } => {
            let c = curve_of(&curve)?;
            json(out::abc(&phi(&c, &parse_point(&point)?)?))
        }
        Command::Add { curve, p, q } => {
            let c = curve_of(&curve)?;
            json(out::point(&c.add(&parse_point(&p)?, &parse_point(&q)?)?))
        }
        Command::Double { curve, point } => {
            let c = curve_of(&curve)?;
            json(out::point(&c.double(&parse_point(&point)?)?))
        }
        Command::Mul { curve, k, point } => {
            let c = curve_of(&curve)?;
            json(out::point(&c.scalar_mul(&k, &parse_point(&point)?)?))
        }
        Command::Order { curve, point } => {
            let c = curve_of(&curve)?;
            let order = match c.order_bounded(&parse_point(&point)?)? {
                Order::Finite(k) => json!(k),
                Order::Infinite => json!("infinite"),
            };
            json(json!({ "order": order }))
        }
        Command::Next { angle, triple } => {
            let t = triple_of(&angle_of(&angle)?, &triple)?;
            json(out::abc(&step(&t)?.output))
        }
        Command::Orbit { angle, triple, steps, max_steps } => {
            let t = triple_of(&angle_of(&angle)?, &triple)?;
            let cap = config.u64_or(max_steps, "max_orbit_steps", DEFAULT_MAX_ORBIT_STEPS as u64)?;
            let report = orbit_report(&t, steps as usize, cap as usize)?;
            let orbit: Vec<Value> = report
                .triples
                .iter()
                .enumerate()
                .map(|(i, u)| {
                    let mut v = out::abc(u);
                    v["step"] = json!(i);
                    v
                })
                .collect();
            let mut v = Value::Object(out::context(&t));
            v["orbit"] = Value::Array(orbit);
            v["stopped"] = match &report.stopped {
                None => Value::Null,
                Some((index, e)) => json!({ "index": index, "error": out::error(e) }),
            };
            json(v)
        }
        Command::Combine { angle, t0, t1 } => {
            let angle = angle_of(&angle)?;
            let rec = combine_record(&triple_of(&angle, &t0)?, &triple_of(&angle, &t1)?)?;
            let mut v = Value::Object(out::context(&rec.t0));
            v["t0"] = out::abc(&rec.t0);
            v["t1"] = out::abc(&rec.t1);
            v["tvals"] = json!([out::rat(&rec.tvals.0), out::rat(&rec.tvals.1)]);
            v["p0"] = out::point(&rec.p0);
            v["p1"] = out::point(&rec.p1);
            v["sum"] = out::point(&rec.sum);
            v["group_law"] = out::abc(&rec.result);
            v["closed_form"] = rec.closed_form.as_ref().map_or(Value::Null, out::abc);
            v["agree"] = json!(rec.paths_agree());
            v["printed_T"] = out::rat(&rec.printed_t);
            v["printed_T_a"] = rec.printed_a2.as_ref().map_or(Value::Null, out::rat);
            v["printed_T_agrees"] = json!(rec.printed_t_matches());
            json(v)
        }
        Command::Torsion { r, s, n, r_max, n_max, format } => {
            if r_max.is_some() || n_max.is_some() {
                let r_max = config.u64_or(r_max, "r_max", 12)?;
                let n_max = config.u64_or(n_max, "n_max", 12)?;
                let to_i64 = |x: u64| {
                    i64::try_from(x).map_err(|_| Error::InvalidArgument(format!("{x} is too large")))
                };
                let rows = atlas(to_i64(r_max)?, to_i64(n_max)?)?;
                return match config.format_or(format)? {
                    Format::Json => json(serde_json::to_value(&rows).map_err(|e| Error::InternalInconsistency(e.to_string()))?),
                    Format::Csv => Ok(Output::Text(csv_text(
                        &["r", "s", "N", "shape", "case"],
                        rows.iter()
                            .map(|row| {
                                vec![
                                    row.r.to_string(),
                                    row.s.to_string(),
                                    row.n.to_string(),
                                    row.shape.to_string(),
                                    row.case.clone(),
                                ]
                            })
                            .collect(),
                    )?)),
                };
            }
            let (Some(r), Some(s), Some(n)) = (r, s, n) else {
                return Err(Error::Parse("torsion needs --r, --s and --N, or --r-max and --N-max".into()));
            };
            let angle = Angle::new(s, r)?;
            let curve = Curve::new(&angle, &n)?;
            let group = torsion_subgroup(&curve)?;
            let case = classify_case(&angle, &n)?;
            json(json!({
                "r": out::int(angle.r()),
                "s": out::int(angle.s()),
                "N": out::int(&n),
                "shape": group.shape.to_string(),
                "case": case.as_str(),
                "points": out::torsion_points(&group),
                "generators": [out::point(&group.generators.0), out::point(&group.generators.1)],
            }))
        }
        Command::Classify { curve } => {
            let case = classify_case(&angle_of(&curve.angle)?, &curve.n)?;
            json(json!({ "case": case.as_str(), "shape": case.shape().to_string() }))
        }
        Command::Family { case, u, v } => {
            let case: CaseLabel = case.parse()?;
            let inst = family_instance(case, &u, &v)?;
            json(json!({
                "case": case.as_str(),
                "u": out::int(&inst.u),
                "v": out::int(&inst.v),
                "r": out::int(inst.angle.r()),
                "s": out::int(inst.angle.s()),
                "N": out::int(&inst.n),
                "shape": case.shape().to_string(),
                "seed": out::abc(&inst.seed_triple),
            }))
        }
        Command::Congruent { curve, bound } => {
            let bound = config.u64_or(bound, "height_bound", DEFAULT_HEIGHT_BOUND)?;
            let angle = angle_of(&curve.angle)?;
            let mut v = json!({
                "r": out::int(angle.r()),
                "s": out::int(angle.s()),
                "N": out::int(&curve.n),
            });
            match decide(&angle, &curve.n, bound)? {
                Verdict::Congruent { witness, point, source } => {
                    let (a, b, c) = triangle_of(&witness)?;
                    v["verdict"] = json!("congruent");
                    v["witness"] = out::abc(&witness);
                    v["triangle"] = json!([out::rat(&a), out::rat(&b), out::rat(&c)]);
                    v["point"] = out::point(&point);
                    match source {
                        WitnessSource::Torsion(order) => {
                            v["source"] = json!("torsion");
                            v["order"] = json!(order);
                        }
                        WitnessSource::Search => v["source"] = json!("search"),
                    }
                }
                Verdict::Unknown { bound, not_by_torsion } => {
                    v["verdict"] = json!("unknown");
                    v["bound"] = json!(bound);
                    v["not_by_torsion"] = json!(not_by_torsion);
                }
            }
            json(v)
        }
        Command::Search { curve, bound } => {
            let bound = config.u64_or(bound, "height_bound", DEFAULT_HEIGHT_BOUND)?;
            let c = curve_of(&curve)?;
            let points: Vec<Value> = search_points(&c, bound)?.iter().map(out::point).collect();
            json(json!({ "bound": bound, "points": points }))
        }
        Command::Enumerate { angle, bound, format } => {
            let bound = config.u64_or(bound, "mn_bound", DEFAULT_MN_BOUND)?;
            let table = enumerate_table(&angle_of(&angle)?, bound)?;
            match config.format_or(format)? {
                Format::Json => json(Value::Array(table.values().map(with_context).collect())),
                Format::Csv => Ok(Output::Text(csv_text(
                    &["N", "a", "b", "c"],
                    table
                        .iter()
                        .map(|(n, t)| vec![n.to_string(), t.a().to_string(), t.b().to_string(), t.c().to_string()])
                        .collect(),
                )?)),
            }
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::InternalInconsistency(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or_default().trim_start_matches("error: ");
            eprintln!("{}", json!({ "error": "Parse", "message": first }));
            return ExitCode::from(2);
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(cli) {
        Ok(Output::Json(v)) => {
            let _ = writeln!(stdout, "{v}");
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            let _ = write!(stdout, "{t}");
            ExitCode::SUCCESS
        }
        Ok(Output::Fail(v)) => {
            let _ = writeln!(stdout, "{v}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{}", out::error(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}
