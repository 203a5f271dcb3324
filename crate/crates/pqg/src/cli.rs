//! Batch front end: parse spec files, dispatch verifications and
//! constructions, and emit machine-readable reports.
//!
//! One command per process invocation. Inputs are UTF-8 JSON files whose
//! schema is detected from their top-level keys; scalar literals parse
//! exactly (decimal floats are rejected everywhere). Truncation windows and
//! degree bounds are mandatory flags wherever they change meaning — there
//! are no silent defaults for infinite templates. The JSON emitted for a
//! report is byte-stable for identical inputs and toolkit version; timing
//! appears only in the text rendering. The process exit status is `0` iff
//! the run produced zero failed checks (boundary skips and unknowns do not
//! fail a run; hard errors exit with status `2`).

use crate::corep::{
    character_table_to_json, enumerate_irreducibles, peter_weyl_report, schur_report,
    woronowicz_characters,
};
use crate::error::{Error, Result};
use crate::partial_hopf::{
    data_from_json, data_to_json, verify_antipode, verify_canonical_maps, verify_integral,
    verify_partial_algebra, verify_partial_bialgebra, verify_star, PartialHopfData,
};
use crate::presentations::{
    build_presentation, check_hopf_wellposed, presentation_from_json, presentation_to_json,
    Presentation,
};
use crate::report::{Status, VerificationReport};
use crate::scalar::{parse_scalar, FieldSpec, Scalar};
use crate::tannaka::{
    fiber_from_json, reconstruct, roundtrip_check, validate_fiber_data, FiberData,
};
use crate::walks::{
    build_r_map, one_vertex_walk, podles_walk, validate_walk, verify_conjugate_equations,
    walk_from_json, walk_to_json, ReciprocalWalk,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Output rendering of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// The `pqg` command line: one verb per invocation.
#[derive(Debug, Parser)]
#[command(name = "pqg", version, about = "Exact toolkit for partial compact quantum groups")]
pub struct Command {
    #[command(subcommand)]
    pub verb: Verb,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Run the full verifier suite for a JSON input (partial Hopf data,
    /// fiber data, reciprocal walk, or presentation).
    Verify {
        input: PathBuf,
        /// Degree bound for ideal-membership certificates (presentations).
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Reconstruct a partial compact quantum group from fiber data.
    BuildTannaka { input: PathBuf },
    /// Build a reciprocal walk from a template or file and validate it.
    Walk {
        /// `podles`, `one-vertex`, or a path to a walk JSON file.
        template: String,
        /// Deformation parameter as an exact literal, e.g. `1/2`.
        #[arg(long)]
        q: Option<String>,
        /// Lattice parameter as an exact literal, e.g. `0`.
        #[arg(long)]
        x: Option<String>,
        /// Truncation window `LO:HI`; mandatory for infinite templates.
        #[arg(long)]
        window: Option<String>,
    },
    /// Build the generator/relation presentation of a walk.
    Present {
        /// Path to a walk JSON file.
        input: PathBuf,
        /// Also run the Hopf-structure well-posedness checks.
        #[arg(long)]
        check_hopf: bool,
        /// Degree bound for ideal-membership certificates.
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Decompose the regular corepresentations: Peter–Weyl and Schur
    /// orthogonality reports for a partial Hopf data file.
    CorepReport { input: PathBuf },
    /// Woronowicz character functionals `f_z` of a partial Hopf data file.
    Characters {
        input: PathBuf,
        /// Comma-separated exponents, e.g. `-1,0,1,2`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
}

/// A parsed input file, detected by its top-level keys.
#[derive(Debug)]
pub enum TypedInput {
    Hopf(PartialHopfData),
    Fiber(FiberData),
    Walk(ReciprocalWalk),
    Presentation(Presentation),
}

/// Read and type a JSON spec file. Schema violations carry JSON-pointer
/// paths; scalar literals parse exactly.
pub fn parse_spec(path: &Path) -> Result<TypedInput> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)?;
    let obj = v.as_object().ok_or_else(|| Error::Schema {
        path: "$".to_string(),
        message: "expected a JSON object".to_string(),
    })?;
    if obj.contains_key("relations") && obj.contains_key("walk") {
        Ok(TypedInput::Presentation(presentation_from_json(&v)?))
    } else if obj.contains_key("edges") && obj.contains_key("t") {
        Ok(TypedInput::Walk(walk_from_json(&v)?))
    } else if obj.contains_key("irreducibles") && obj.contains_key("fusion") {
        Ok(TypedInput::Fiber(fiber_from_json(&v)?))
    } else if obj.contains_key("blocks") && obj.contains_key("product") {
        Ok(TypedInput::Hopf(data_from_json(&v)?))
    } else {
        Err(Error::Schema {
            path: "$".to_string(),
            message: "unknown schema: expected partial Hopf data, fiber data, \
                      a walk, or a presentation"
                .to_string(),
        })
    }
}

/// The outcome of one command: the echoed command line, toolkit version,
/// all checks with witnesses, any constructed artifact, and wall time.
/// Equality of report content is defined with timing excluded; the JSON
/// rendering therefore omits it.
#[derive(Debug)]
pub struct CliReport {
    pub command: String,
    pub version: String,
    pub checks: VerificationReport,
    pub artifact: Option<(String, Value)>,
    pub elapsed_ms: u128,
}

fn parse_window(spec: &str) -> Result<(i64, i64)> {
    let parts: Vec<&str> = spec.splitn(2, ':').collect();
    let err = || Error::Precondition(format!("window must be LO:HI, got {spec:?}"));
    if parts.len() != 2 {
        return Err(err());
    }
    let lo: i64 = parts[0].trim().parse().map_err(|_| err())?;
    let hi: i64 = parts[1].trim().parse().map_err(|_| err())?;
    Ok((lo, hi))
}

fn rational_flag(name: &str, value: Option<&str>) -> Result<Scalar> {
    let lit = value.ok_or_else(|| {
        Error::Precondition(format!("--{name} is mandatory for this template"))
    })?;
    parse_scalar(lit, &FieldSpec::rational())
}

fn verify_hopf_data(data: &PartialHopfData) -> VerificationReport {
    let mut rep = verify_partial_algebra(data);
    rep.merge(verify_partial_bialgebra(data));
    rep.merge(verify_antipode(data));
    rep.merge(verify_canonical_maps(data));
    rep.merge(verify_integral(data));
    rep.merge(verify_star(data));
    rep.sorted()
}

fn verify_walk(walk: &ReciprocalWalk) -> Result<VerificationReport> {
    let mut rep = validate_walk(walk);
    let r = build_r_map(walk)?;
    rep.merge(verify_conjugate_equations(walk, &r));
    Ok(rep.sorted())
}

fn build_walk(
    template: &str,
    q: Option<&str>,
    x: Option<&str>,
    window: Option<&str>,
) -> Result<ReciprocalWalk> {
    match template {
        "one-vertex" => Ok(one_vertex_walk()),
        "podles" => {
            let q = rational_flag("q", q)?;
            let x = rational_flag("x", x)?;
            let window = parse_window(window.ok_or_else(|| {
                Error::Precondition(
                    "--window is mandatory for the infinite lattice template".to_string(),
                )
            })?)?;
            podles_walk(&q, &x, window)
        }
        path => match parse_spec(Path::new(path))? {
            TypedInput::Walk(w) => Ok(w),
            _ => Err(Error::Precondition(format!(
                "{path:?} does not contain a walk"
            ))),
        },
    }
}

/// Execute a parsed command, producing a report and optional artifact.
pub fn run(cmd: &Command) -> Result<CliReport> {
    configure_threads();
    let start = Instant::now();
    let (echo, checks, artifact) = match &cmd.verb {
        Verb::Verify { input, degree } => {
            let echo = format!("verify {}", input.display());
            match parse_spec(input)? {
                TypedInput::Hopf(data) => (echo, verify_hopf_data(&data), None),
                TypedInput::Fiber(fd) => {
                    let mut rep = validate_fiber_data(&fd);
                    if rep.no_failures() {
                        rep.merge(roundtrip_check(&fd)?);
                    }
                    (echo, rep.sorted(), None)
                }
                TypedInput::Walk(walk) => (echo, verify_walk(&walk)?, None),
                TypedInput::Presentation(p) => {
                    (echo, check_hopf_wellposed(&p, *degree), None)
                }
            }
        }
        Verb::BuildTannaka { input } => {
            let echo = format!("build-tannaka {}", input.display());
            let fd = match parse_spec(input)? {
                TypedInput::Fiber(fd) => fd,
                _ => {
                    return Err(Error::Precondition(format!(
                        "{} does not contain fiber data",
                        input.display()
                    )))
                }
            };
            let rep = validate_fiber_data(&fd);
            if !rep.no_failures() {
                (echo, rep.sorted(), None)
            } else {
                let out = reconstruct(&fd)?;
                (
                    echo,
                    rep.sorted(),
                    Some(("partial-hopf-data".to_string(), data_to_json(&out.data))),
                )
            }
        }
        Verb::Walk {
            template,
            q,
            x,
            window,
        } => {
            let echo = format!("walk {template}");
            let walk = build_walk(template, q.as_deref(), x.as_deref(), window.as_deref())?;
            let rep = verify_walk(&walk)?;
            (echo, rep, Some(("walk".to_string(), walk_to_json(&walk))))
        }
        Verb::Present {
            input,
            check_hopf,
            degree,
        } => {
            let echo = format!("present {}", input.display());
            let walk = match parse_spec(input)? {
                TypedInput::Walk(w) => w,
                _ => {
                    return Err(Error::Precondition(format!(
                        "{} does not contain a walk",
                        input.display()
                    )))
                }
            };
            let p = build_presentation(&walk)?;
            let rep = if *check_hopf {
                check_hopf_wellposed(&p, *degree)
            } else {
                VerificationReport::new()
            };
            (
                echo,
                rep,
                Some(("presentation".to_string(), presentation_to_json(&p))),
            )
        }
        Verb::CorepReport { input } => {
            let echo = format!("corep-report {}", input.display());
            let data = match parse_spec(input)? {
                TypedInput::Hopf(data) => data,
                _ => {
                    return Err(Error::Precondition(format!(
                        "{} does not contain partial Hopf data",
                        input.display()
                    )))
                }
            };
            let irreps = enumerate_irreducibles(&data)?;
            let mut rep = peter_weyl_report(&data, &irreps);
            for (i, x) in irreps.iter().enumerate() {
                rep.merge(schur_report(&data, x, None)?);
                for y in &irreps[i + 1..] {
                    rep.merge(schur_report(&data, x, Some(y))?);
                }
            }
            let dims: Vec<usize> = irreps.iter().map(|x| x.total_dim()).collect();
            (
                echo,
                rep.sorted(),
                Some(("irreducible-dimensions".to_string(), json!(dims))),
            )
        }
        Verb::Characters { input, z } => {
            let echo = format!("characters {} --z {z}", input.display());
            let data = match parse_spec(input)? {
                TypedInput::Hopf(data) => data,
                _ => {
                    return Err(Error::Precondition(format!(
                        "{} does not contain partial Hopf data",
                        input.display()
                    )))
                }
            };
            let zs: Vec<i64> = z
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))
                })
                .collect::<Result<_>>()?;
            let table = woronowicz_characters(&data, &zs)?;
            let artifact = character_table_to_json(&data, &table);
            (
                echo,
                table.report.clone().sorted(),
                Some(("character-table".to_string(), artifact)),
            )
        }
    };
    Ok(CliReport {
        command: echo,
        version: env!("CARGO_PKG_VERSION").to_string(),
        checks,
        artifact,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Render a report. JSON output is byte-stable for identical inputs and
/// version (timing is text-only); text output is a line per check plus a
/// summary.
pub fn emit(rep: &CliReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("command".to_string(), json!(rep.command));
            obj.insert("version".to_string(), json!(rep.version));
            obj.insert(
                "checks".to_string(),
                serde_json::to_value(&rep.checks.checks).expect("reports serialize"),
            );
            obj.insert("summary".to_string(), json!(rep.checks.summary()));
            if let Some((name, value)) = &rep.artifact {
                obj.insert(name.clone(), value.clone());
            }
            let mut out = serde_json::to_string_pretty(&Value::Object(obj))
                .expect("reports serialize");
            out.push('\n');
            out
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("# {} (pqg {})\n", rep.command, rep.version));
            for c in &rep.checks.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::SkippedBoundary => "SKIP",
                    Status::Unknown => "????",
                };
                match &c.witness {
                    Some(w) => out.push_str(&format!("{tag} {} — {w}\n", c.axiom)),
                    None => out.push_str(&format!("{tag} {}\n", c.axiom)),
                }
            }
            out.push_str(&format!(
                "{} [{} ms]\n",
                rep.checks.summary(),
                rep.elapsed_ms
            ));
            if let Some((name, value)) = &rep.artifact {
                out.push_str(&format!(
                    "{name}: {}\n",
                    serde_json::to_string(value).expect("artifacts serialize")
                ));
            }
            out
        }
    }
}

/// Cap internal parallelism at `PQG_THREADS` when set.
fn configure_threads() {
    if let Ok(n) = std::env::var("PQG_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}

/// Entry point of the `pqg` binary: run one command, write the report once,
/// and translate the outcome into an exit status (`0` iff zero failures,
/// `2` on hard errors).
pub fn main_entry() -> i32 {
    let cmd = match Command::try_parse() {
        Ok(cmd) => cmd,
        Err(e) => {
            // Help/version output is not an error.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cmd) {
        Ok(rep) => {
            let rendered = emit(&rep, cmd.format);
            match &cmd.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!("error: {e}");
                        return 2;
                    }
                }
                None => print!("{rendered}"),
            }
            if rep.checks.no_failures() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial_hopf::pair_groupoid;
    use crate::tannaka::pair_groupoid_fiber;
    use num::rational::Ratio;

    fn tmp(name: &str, v: &Value) -> PathBuf {
        let dir = std::env::temp_dir().join("pqg-cli-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
        path
    }

    fn podles() -> ReciprocalWalk {
        let q = Scalar::from_rat(Ratio::new(1.into(), 2.into()));
        podles_walk(&q, &Scalar::from_int(0), (-2, 2)).unwrap()
    }

    #[test]
    fn spec_files_are_detected_by_schema() {
        let walk = podles();
        let p = build_presentation(&walk).unwrap();
        let fd = pair_groupoid_fiber(&[0, 1]).unwrap();
        let data = pair_groupoid(2);
        assert!(matches!(
            parse_spec(&tmp("walk.json", &walk_to_json(&walk))).unwrap(),
            TypedInput::Walk(_)
        ));
        assert!(matches!(
            parse_spec(&tmp("pres.json", &presentation_to_json(&p))).unwrap(),
            TypedInput::Presentation(_)
        ));
        assert!(matches!(
            parse_spec(&tmp("fiber.json", &crate::tannaka::fiber_to_json(&fd))).unwrap(),
            TypedInput::Fiber(_)
        ));
        assert!(matches!(
            parse_spec(&tmp("hopf.json", &data_to_json(&data))).unwrap(),
            TypedInput::Hopf(_)
        ));
    }

    #[test]
    fn decimal_floats_are_rejected() {
        let mut v = walk_to_json(&podles());
        v["edges"][0]["weight"] = json!("1.25");
        let err = parse_spec(&tmp("decimal.json", &v)).unwrap_err();
        assert!(err.to_string().contains("parse"), "{err}");
    }

    #[test]
    fn verify_passes_on_the_pair_groupoid_and_fails_on_a_mutation() {
        let data = pair_groupoid(2);
        let cmd = Command {
            verb: Verb::Verify {
                input: tmp("pg2.json", &data_to_json(&data)),
                degree: 4,
            },
            output: None,
            format: Format::Json,
        };
        let rep = run(&cmd).unwrap();
        assert!(rep.checks.no_failures(), "{}", rep.checks.summary());

        let mut bad = data_to_json(&data);
        // Perturb one counit coefficient.
        let key = bad["counit"]
            .as_object()
            .unwrap()
            .keys()
            .next()
            .unwrap()
            .clone();
        bad["counit"][&key][0] = json!("7");
        let cmd = Command {
            verb: Verb::Verify {
                input: tmp("pg2-bad.json", &bad),
                degree: 4,
            },
            output: None,
            format: Format::Json,
        };
        let rep = run(&cmd).unwrap();
        assert!(!rep.checks.no_failures());
    }

    #[test]
    fn walk_then_present_round_trips_byte_stably() {
        let cmd = Command {
            verb: Verb::Walk {
                template: "podles".to_string(),
                q: Some("1/2".to_string()),
                x: Some("0".to_string()),
                window: Some("-2:2".to_string()),
            },
            output: None,
            format: Format::Json,
        };
        let rep = run(&cmd).unwrap();
        assert!(rep.checks.no_failures(), "{}", rep.checks.summary());
        let (_, walk_json) = rep.artifact.as_ref().unwrap();
        let path = tmp("walk-rt.json", walk_json);

        // emit(parse(emit(x))) = emit(x).
        let reparsed = match parse_spec(&path).unwrap() {
            TypedInput::Walk(w) => w,
            _ => unreachable!(),
        };
        assert_eq!(
            serde_json::to_string(walk_json).unwrap(),
            serde_json::to_string(&walk_to_json(&reparsed)).unwrap()
        );

        let cmd = Command {
            verb: Verb::Present {
                input: path,
                check_hopf: true,
                degree: 2,
            },
            output: None,
            format: Format::Json,
        };
        let rep = run(&cmd).unwrap();
        assert!(rep.checks.no_failures(), "{}", rep.checks.summary());
        assert!(rep.artifact.is_some());

        // Identical inputs render to identical bytes (timing excluded).
        let a = emit(&rep, Format::Json);
        let b = emit(&run(&cmd).unwrap(), Format::Json);
        assert_eq!(a, b);
    }

    #[test]
    fn mandatory_flags_are_enforced_for_infinite_templates() {
        let cmd = Command {
            verb: Verb::Walk {
                template: "podles".to_string(),
                q: Some("1/2".to_string()),
                x: Some("0".to_string()),
                window: None,
            },
            output: None,
            format: Format::Text,
        };
        let err = run(&cmd).unwrap_err();
        assert!(err.to_string().contains("--window"), "{err}");
    }

    #[test]
    fn characters_echo_the_counit_at_exponent_zero() {
        let data = pair_groupoid(2);
        let cmd = Command {
            verb: Verb::Characters {
                input: tmp("pg2-char.json", &data_to_json(&data)),
                z: "-1,0,1".to_string(),
            },
            output: None,
            format: Format::Text,
        };
        let rep = run(&cmd).unwrap();
        assert!(rep.checks.no_failures(), "{}", rep.checks.summary());
        let (name, table) = rep.artifact.as_ref().unwrap();
        assert_eq!(name, "character-table");
        assert!(table.get("functionals").is_some());
        let text = emit(&rep, Format::Text);
        assert!(text.contains("character-table"));
    }
}
