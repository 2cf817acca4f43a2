//! Command-line front end: parse documents, run the exact computations,
//! and print either a human summary or a canonical JSON report.
//!
//! Exit codes: 0 means the command ran and its verdict (if any) passed,
//! 1 means a failed verdict (axiom violation, obstruction, inequivalence),
//! 2 means the request itself was unusable (bad syntax, bad document,
//! out-of-range sizes). JSON output is byte-stable for fixed inputs: keys
//! are sorted and wall time is kept out of it.

use clap::{Parser, Subcommand};
use lyd_core::algebra::LieYamagutiAlgebra;
use lyd_core::cochain::CochainPair;
use lyd_core::cohomology::{h23, h_deformation_3445, h_general, CohomologyResult};
use lyd_core::deform::{
    are_equivalent, check_deformation, extend_one_order, extension_by_cocycle, integrate,
    normalize, obstruction, Equivalence, Extension, FormalIsomorphism, IntegrateError,
    TruncatedDeformation,
};
use lyd_core::free::{to_term, FreeError, FreeLya};
use lyd_core::io::{
    parse_algebra, parse_cochain, parse_deformation, parse_representation, AlgebraDocument,
    DeformationDocument, TermDocument,
};
use lyd_core::linalg::Scalar;
use lyd_core::rep::Representation;
use lyd_core::{algebra::AxiomReport, algebra::IdentityCheck};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "lyd",
    version,
    about = "Exact computations for finite-dimensional Lie-Yamaguti algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit a canonical JSON report instead of a human summary.
    #[arg(long, global = true)]
    json: bool,
    /// Seed echoed into the report; commands themselves are deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the six defining axioms of an algebra document.
    Check { file: PathBuf },
    /// Verify the six representation identities of a .rep document.
    RepCheck { file: PathBuf },
    /// Cocycle, coboundary, and quotient dimensions at a complex node.
    Cohomology {
        file: PathBuf,
        /// Node selector: 23, 3445, or p=<k> for the level-(2k-1,2k+1) pair.
        #[arg(long, default_value = "23")]
        which: String,
    },
    /// Operations on truncated one-parameter deformations.
    Deform {
        #[command(subcommand)]
        cmd: DeformCmd,
    },
    /// Graded free algebras on planar tree words.
    Free {
        #[command(subcommand)]
        cmd: FreeCmd,
    },
}

#[derive(Subcommand)]
enum DeformCmd {
    /// Check the deformation equations at every truncated order.
    Check { file: PathBuf },
    /// Extract the first nonzero coefficient and test it for cocyclehood.
    Infinitesimal { file: PathBuf },
    /// Compute the obstruction to one more order.
    Obstruct { file: PathBuf },
    /// Append one more order when the obstruction is absorbable.
    Extend {
        file: PathBuf,
        /// Include the solved coefficient pair in the report.
        #[arg(long)]
        witness: bool,
    },
    /// Integrate a (2,3)-cocycle order by order.
    Integrate {
        algebra: PathBuf,
        /// Binary part of the infinitesimal (.cochain, arity 2).
        #[arg(long)]
        f: PathBuf,
        /// Ternary part of the infinitesimal (.cochain, arity 3).
        #[arg(long)]
        g: PathBuf,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Decide order-by-order equivalence of two deformations.
    Equivalent {
        first: PathBuf,
        second: PathBuf,
        /// Order to compare through; defaults to the smaller truncation.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Strip coboundary infinitesimals until one resists or none remain.
    Normalize { file: PathBuf },
    /// Build the split extension algebra attached to a (2,3)-cochain pair.
    ExtendAlg {
        algebra: PathBuf,
        /// Binary part (.cochain, arity 2).
        #[arg(long)]
        f: PathBuf,
        /// Ternary part (.cochain, arity 3).
        #[arg(long)]
        g: PathBuf,
    },
}

#[derive(Subcommand)]
enum FreeCmd {
    /// Quotient dimensions per weight.
    Dims {
        #[arg(long)]
        gens: usize,
        #[arg(long)]
        max_weight: usize,
    },
    /// Quotient basis words per weight.
    Basis {
        #[arg(long)]
        gens: usize,
        #[arg(long)]
        max_weight: usize,
    },
}

/// Everything a finished command hands back for printing.
struct Outcome {
    /// Verdict: None = informational command, Some(false) = exit 1.
    pass: Option<bool>,
    report: Value,
    human: String,
}

fn ok(pass: Option<bool>, report: Value, human: String) -> Result<Outcome, Failure> {
    Ok(Outcome { pass, report, human })
}

/// A command that could not run at all (exit 2).
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(e.to_string())
    }
}

struct Inputs {
    hashes: BTreeMap<String, String>,
}

impl Inputs {
    fn new() -> Inputs {
        Inputs { hashes: BTreeMap::new() }
    }

    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure(format!("reading {}: {e}", path.display())))?;
        let digest = Sha256::digest(text.as_bytes());
        let mut hex = String::with_capacity(64);
        for b in digest {
            hex.push_str(&format!("{b:02x}"));
        }
        self.hashes.insert(path.display().to_string(), format!("sha256:{hex}"));
        Ok(text)
    }
}

fn scalar_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn checks_json(checks: &[IdentityCheck]) -> Value {
    let list: Vec<Value> = checks
        .iter()
        .map(|c| {
            let witnesses: Vec<Value> = c
                .violations
                .iter()
                .take(3)
                .map(|v| json!({ "args": v.args, "residual": scalar_strings(&v.residual) }))
                .collect();
            json!({
                "name": c.name,
                "passed": c.passed(),
                "violations": c.violations.len(),
                "witnesses": witnesses,
            })
        })
        .collect();
    json!(list)
}

fn checks_human(checks: &[IdentityCheck]) -> String {
    let mut out = String::new();
    for c in checks {
        if c.passed() {
            out.push_str(&format!("  {}: ok\n", c.name));
        } else {
            let v = &c.violations[0];
            out.push_str(&format!(
                "  {}: {} violations, first at {:?}\n",
                c.name,
                c.violations.len(),
                v.args
            ));
        }
    }
    out
}

fn axiom_outcome(report: &AxiomReport, label: &str) -> (Value, String) {
    let human = format!(
        "{label}: {}\n{}",
        if report.passed() { "pass" } else { "FAIL" },
        checks_human(&report.checks)
    );
    (json!({ "passed": report.passed(), "checks": checks_json(&report.checks) }), human)
}

fn cohomology_json(h: &CohomologyResult) -> Value {
    let reps: Vec<Vec<String>> = h.representatives().iter().map(|r| scalar_strings(r)).collect();
    let mut v = json!({
        "node": h.node(),
        "ambient_dim": h.ambient_dim(),
        "z_dim": h.z_dim(),
        "b_dim": h.b_dim(),
        "h_dim": h.h_dim(),
        "representatives": reps,
    });
    if let Some((zf, zg)) = h.product_z_dims() {
        v["z_dim_binary"] = json!(zf);
        v["z_dim_ternary"] = json!(zg);
    }
    v
}

fn isomorphism_json(phi: &FormalIsomorphism, order: usize) -> Value {
    let series: Vec<Value> = phi
        .series(order)
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let rows: Vec<Vec<String>> = (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| m.at(r, c).to_string()).collect())
                .collect();
            json!({ "order": k, "matrix": rows })
        })
        .collect();
    json!(series)
}

fn load_pair(
    inputs: &mut Inputs,
    algebra: &LieYamagutiAlgebra,
    f: &Path,
    g: &Path,
) -> Result<CochainPair, Failure> {
    let n = algebra.dim();
    let ftext = inputs.read(f)?;
    let gtext = inputs.read(g)?;
    let fc = parse_cochain(&ftext, n)?;
    let gc = parse_cochain(&gtext, n)?;
    if fc.arity() != 2 || fc.coeff_dim() != n {
        return Err(Failure(format!(
            "{}: expected an arity-2 cochain with coeff_dim {n}",
            f.display()
        )));
    }
    if gc.arity() != 3 || gc.coeff_dim() != n {
        return Err(Failure(format!(
            "{}: expected an arity-3 cochain with coeff_dim {n}",
            g.display()
        )));
    }
    let mut pair = CochainPair::zero(1, n, n);
    pair.f = fc;
    pair.g = gc;
    Ok(pair)
}

fn run(cli: &Cli, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    match &cli.cmd {
        Cmd::Check { file } => {
            let text = inputs.read(file)?;
            let l = parse_algebra(&text)?;
            let report = l.check_axioms();
            let (value, human) = axiom_outcome(&report, "axioms");
            let mut v = json!({ "dim": l.dim(), "basis": l.basis_names() });
            v["axioms"] = value;
            ok(Some(report.passed()), v, human)
        }
        Cmd::RepCheck { file } => {
            let text = inputs.read(file)?;
            let base = file.parent().map(Path::to_path_buf);
            let r = parse_representation(&text, base.as_deref())?;
            let report = r.check_representation();
            let human = format!(
                "representation identities: {}\n{}",
                if report.passed() { "pass" } else { "FAIL" },
                checks_human(&report.checks)
            );
            ok(
                Some(report.passed()),
                json!({
                    "dim": r.algebra().dim(),
                    "coeff_dim": r.coeff_dim(),
                    "passed": report.passed(),
                    "checks": checks_json(&report.checks),
                }),
                human,
            )
        }
        Cmd::Cohomology { file, which } => {
            let text = inputs.read(file)?;
            let l = parse_algebra(&text)?;
            let rep = Representation::adjoint(&l);
            let h = match which.as_str() {
                "23" => h23(&rep)?,
                "3445" => h_deformation_3445(&rep)?,
                other => match other.strip_prefix("p=") {
                    Some(k) => {
                        let p: usize =
                            k.parse().map_err(|_| Failure(format!("bad level {k:?}")))?;
                        if p < 2 {
                            return Err(Failure("level must be at least 2".into()));
                        }
                        h_general(&rep, p)?
                    }
                    None => {
                        return Err(Failure(format!(
                            "--which takes 23, 3445, or p=<k>, not {other:?}"
                        )))
                    }
                },
            };
            let human = format!(
                "node {}: z_dim {}  b_dim {}  h_dim {}\n",
                h.node(),
                h.z_dim(),
                h.b_dim(),
                h.h_dim()
            );
            ok(None, cohomology_json(&h), human)
        }
        Cmd::Deform { cmd } => run_deform(cmd, inputs),
        Cmd::Free { cmd } => run_free(cmd),
    }
}

fn load_def(inputs: &mut Inputs, file: &Path) -> Result<TruncatedDeformation, Failure> {
    let text = inputs.read(file)?;
    let base = file.parent().map(Path::to_path_buf);
    Ok(parse_deformation(&text, base.as_deref())?)
}

fn run_deform(cmd: &DeformCmd, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    match cmd {
        DeformCmd::Check { file } => {
            let d = load_def(inputs, file)?;
            let report = check_deformation(&d);
            let orders: Vec<Value> = report
                .orders
                .iter()
                .map(|o| {
                    json!({
                        "order": o.order,
                        "passed": o.passed(),
                        "checks": checks_json(&o.checks),
                    })
                })
                .collect();
            let human = match report.first_failure() {
                None => format!("deformation equations hold through order {}\n", d.order()),
                Some((order, name)) => {
                    format!("FAIL at order {order}: {name}\n")
                }
            };
            ok(
                Some(report.passed()),
                json!({ "order": d.order(), "passed": report.passed(), "orders": orders }),
                human,
            )
        }
        DeformCmd::Infinitesimal { file } => {
            let d = load_def(inputs, file)?;
            let rep = Representation::adjoint(d.algebra());
            match d.n_infinitesimal() {
                None => ok(
                    Some(true),
                    json!({ "order": Value::Null, "is_cocycle": Value::Null }),
                    "identity deformation: no nonzero coefficient\n".to_string(),
                ),
                Some((n, pair)) => {
                    let is_cocycle = lyd_core::deform::is_cocycle_23(&rep, pair);
                    let human = format!(
                        "{n}-infinitesimal found; (2,3)-cocycle: {}\n",
                        if is_cocycle { "yes" } else { "NO" }
                    );
                    ok(
                        Some(is_cocycle),
                        json!({
                            "order": n,
                            "is_cocycle": is_cocycle,
                            "term": serde_json::to_value(TermDocument::from_pair(pair)).unwrap(),
                        }),
                        human,
                    )
                }
            }
        }
        DeformCmd::Obstruct { file } => {
            let d = load_def(inputs, file)?;
            let ob = obstruction(&d)?;
            let next = d.order() + 1;
            match extend_one_order(&d)? {
                Extension::Extended(_) => ok(
                    Some(true),
                    json!({
                        "at_order": next,
                        "node_coordinates": scalar_strings(&ob.node_coordinates()),
                        "absorbable": true,
                    }),
                    format!("obstruction at order {next} lies in the coboundary image\n"),
                ),
                Extension::Obstructed(class) => {
                    let class_json = match &class.class {
                        Some(c) => json!(scalar_strings(c)),
                        None => Value::Null,
                    };
                    ok(
                        Some(false),
                        json!({
                            "at_order": next,
                            "node_coordinates": scalar_strings(&ob.node_coordinates()),
                            "absorbable": false,
                            "residue": scalar_strings(&class.residue),
                            "class": class_json,
                        }),
                        format!("OBSTRUCTED at order {next}: nonzero cohomology class\n"),
                    )
                }
            }
        }
        DeformCmd::Extend { file, witness } => {
            let d = load_def(inputs, file)?;
            match extend_one_order(&d)? {
                Extension::Extended(next) => {
                    let mut v = json!({
                        "extended": true,
                        "order": next.order(),
                    });
                    if *witness {
                        let term = next.term(next.order());
                        v["witness"] =
                            serde_json::to_value(TermDocument::from_pair(term)).unwrap();
                    }
                    v["deformation"] =
                        serde_json::to_value(DeformationDocument::from_deformation(&next))
                            .unwrap();
                    ok(Some(true), v, format!("extended to order {}\n", next.order()))
                }
                Extension::Obstructed(class) => {
                    let class_json = match &class.class {
                        Some(c) => json!(scalar_strings(c)),
                        None => Value::Null,
                    };
                    ok(
                        Some(false),
                        json!({
                            "extended": false,
                            "at_order": class.at_order,
                            "residue": scalar_strings(&class.residue),
                            "class": class_json,
                        }),
                        format!("OBSTRUCTED at order {}\n", class.at_order),
                    )
                }
            }
        }
        DeformCmd::Integrate { algebra, f, g, order } => {
            if *order < 1 {
                return Err(Failure("--order must be at least 1".into()));
            }
            let text = inputs.read(algebra)?;
            let l = parse_algebra(&text)?;
            let pair = load_pair(inputs, &l, f, g)?;
            match integrate(&l, &pair, *order) {
                Ok(d) => ok(
                    Some(true),
                    json!({
                        "integrated": true,
                        "order": d.order(),
                        "deformation": serde_json::to_value(DeformationDocument::from_deformation(&d)).unwrap(),
                    }),
                    format!("integrated through order {}\n", d.order()),
                ),
                Err(IntegrateError::NotACocycle) => ok(
                    Some(false),
                    json!({ "integrated": false, "reason": "not a cocycle" }),
                    "FAIL: the pair is not a (2,3)-cocycle\n".to_string(),
                ),
                Err(IntegrateError::Obstructed(class)) => {
                    let class_json = match &class.class {
                        Some(c) => json!(scalar_strings(c)),
                        None => Value::Null,
                    };
                    ok(
                        Some(false),
                        json!({
                            "integrated": false,
                            "reason": "obstructed",
                            "at_order": class.at_order,
                            "class": class_json,
                        }),
                        format!("OBSTRUCTED at order {}\n", class.at_order),
                    )
                }
                Err(IntegrateError::Invalid(e)) => Err(Failure(e.to_string())),
            }
        }
        DeformCmd::Equivalent { first, second, order } => {
            let d1 = load_def(inputs, first)?;
            let d2 = load_def(inputs, second)?;
            let through = order.unwrap_or_else(|| d1.order().min(d2.order()));
            match are_equivalent(&d1, &d2, through)? {
                Equivalence::Equivalent(phi) => ok(
                    Some(true),
                    json!({
                        "equivalent": true,
                        "through_order": through,
                        "isomorphism": isomorphism_json(&phi, through),
                    }),
                    format!("equivalent through order {through}\n"),
                ),
                Equivalence::NotEquivalent { at_order } => ok(
                    Some(false),
                    json!({ "equivalent": false, "at_order": at_order }),
                    format!("NOT equivalent: first divergence at order {at_order}\n"),
                ),
            }
        }
        DeformCmd::Normalize { file } => {
            let d = load_def(inputs, file)?;
            let norm = normalize(&d);
            let human = match norm.first_noncoboundary {
                None => "trivial: every coefficient was removed\n".to_string(),
                Some(n) => format!("first non-coboundary coefficient at order {n}\n"),
            };
            ok(
                None,
                json!({
                    "trivial": norm.trivial(),
                    "first_noncoboundary": norm.first_noncoboundary,
                    "deformation": serde_json::to_value(DeformationDocument::from_deformation(&norm.deformation)).unwrap(),
                    "isomorphism": isomorphism_json(&norm.isomorphism, d.order()),
                }),
                human,
            )
        }
        DeformCmd::ExtendAlg { algebra, f, g } => {
            let text = inputs.read(algebra)?;
            let l = parse_algebra(&text)?;
            let pair = load_pair(inputs, &l, f, g)?;
            let (ext, report) = extension_by_cocycle(&l, &pair)?;
            let (axioms, human) = axiom_outcome(&report, "extension axioms");
            let mut v = json!({
                "algebra": serde_json::to_value(AlgebraDocument::from_algebra(&ext)).unwrap(),
            });
            v["axioms"] = axioms;
            ok(Some(report.passed()), v, human)
        }
    }
}

fn run_free(cmd: &FreeCmd) -> Result<Outcome, Failure> {
    let build = |gens: usize, max_weight: usize| -> Result<FreeLya, Failure> {
        if gens < 1 || max_weight < 1 {
            return Err(Failure("--gens and --max-weight must be at least 1".into()));
        }
        FreeLya::new(gens, max_weight).map_err(|e| Failure(e.to_string()))
    };
    match cmd {
        FreeCmd::Dims { gens, max_weight } => {
            let free = build(*gens, *max_weight)?;
            let dims = free.dims();
            let human = format!(
                "{}\n",
                dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
            );
            ok(
                None,
                json!({ "gens": gens, "max_weight": max_weight, "dims": dims }),
                human,
            )
        }
        FreeCmd::Basis { gens, max_weight } => {
            let free = build(*gens, *max_weight)?;
            let mut weights = Vec::new();
            let mut human = String::new();
            for w in 1..=free.max_weight() {
                let words: Vec<String> = free
                    .basis_words(w)
                    .map_err(|e: FreeError| Failure(e.to_string()))?
                    .iter()
                    .map(|t| to_term(t, free.names()).expect("basis words are well formed"))
                    .collect();
                human.push_str(&format!("weight {w} (dim {}):", words.len()));
                for word in &words {
                    human.push(' ');
                    human.push_str(word);
                }
                human.push('\n');
                weights.push(json!({ "weight": w, "dim": words.len(), "words": words }));
            }
            ok(
                None,
                json!({ "gens": gens, "max_weight": max_weight, "weights": weights }),
                human,
            )
        }
    }
}

fn command_echo() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut inputs = Inputs::new();
    match run(&cli, &mut inputs) {
        Ok(outcome) => {
            if cli.json {
                let full = json!({
                    "command": command_echo(),
                    "inputs": inputs.hashes,
                    "seed": cli.seed,
                    "verdict": outcome.pass,
                    "report": outcome.report,
                });
                println!("{}", serde_json::to_string_pretty(&full).unwrap());
            } else {
                print!("{}", outcome.human);
                eprintln!("elapsed: {} ms", started.elapsed().as_millis());
            }
            match outcome.pass {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
