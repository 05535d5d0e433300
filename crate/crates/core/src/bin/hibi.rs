//! `hibi` — build distributive lattices, inspect cone faces, compute
//! the singular locus and multiplicities, and run the verification
//! suites. Every command emits a versioned JSON report (or markdown
//! rendered from the same JSON) with deterministic ordering.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hibi_toric::cone::Cone;
use hibi_toric::dlattice::DistributiveLattice;
use hibi_toric::grassmann::{counterexample_lattice, idn};
use hibi_toric::json::{ideal_from_str, lattice_from_file};
use hibi_toric::multiplicity::{
    catalan, face_mult, fixed_point_mult, hook_mult, lattice_hilbert_crosscheck, sqfree_hilbert,
    stanley_reisner_ideal, FaceMultSpec, HilbertData, SqFreeIdeal,
};
use hibi_toric::poset::Elem;
use hibi_toric::report::{envelope, render_markdown};
use hibi_toric::smoothness::{
    gl_criterion, is_smooth_face, singular_locus_idn, smoothness_equivalence_scan, Status,
};
use hibi_toric::verify::run_suites;

#[derive(Parser)]
#[command(name = "hibi", about = "Exact combinatorics of Hibi toric varieties", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Grassmann lattice I_{d,n}: two values, d then n.
    #[arg(long, num_args = 2, value_names = ["D", "N"])]
    idn: Option<Vec<u32>>,
    /// JSON lattice spec (poset or {"type":"idn",...}).
    #[arg(long)]
    file: Option<String>,
    /// The 12-element interval of I_{3,6} where the interval criterion
    /// fails to certify smoothness.
    #[arg(long)]
    counterexample: bool,
}

impl Source {
    fn build(&self) -> Result<DistributiveLattice, String> {
        if let Some(dn) = &self.idn {
            return idn(dn[0], dn[1]).map_err(|e| e.to_string());
        }
        if let Some(path) = &self.file {
            return lattice_from_file(path).map_err(|e| e.to_string());
        }
        Ok(counterexample_lattice())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Describe a lattice: elements, covers, join-irreducibles, chains.
    Lattice {
        #[command(flatten)]
        source: Source,
    },
    /// Enumerate cone faces, or inspect one face in detail.
    Faces {
        #[command(flatten)]
        source: Source,
        /// JSON array of element labels forming the face's sublattice,
        /// e.g. '["(1,2)","(1,3)"]'.
        #[arg(long)]
        face: Option<String>,
    },
    /// Singular locus of I_{d,n}: all windows, purity, multiplicity 2.
    Sing {
        #[arg(long, num_args = 2, value_names = ["D", "N"], required = true)]
        idn: Vec<u32>,
        /// Also scan every embedded sublattice for criterion agreement.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Multiplicities: fixed points, windows, J-blocks, unions.
    Mult {
        #[arg(long, num_args = 2, value_names = ["D", "N"])]
        idn: Option<Vec<u32>>,
        #[arg(long, num_args = 4, value_names = ["D", "N", "I", "J"])]
        window: Option<Vec<u32>>,
        #[arg(long, num_args = 3, value_names = ["N", "I", "K"])]
        jblock: Option<Vec<u32>>,
        /// Extra blocks (i, k) unioned with --jblock; repeatable.
        #[arg(long, num_args = 2, value_names = ["I", "K"], action = clap::ArgAction::Append)]
        union: Vec<u32>,
        /// JSON lattice file; reports its fixed-point multiplicity.
        #[arg(long)]
        lattice: Option<String>,
    },
    /// Hilbert data of a square-free ideal or a lattice degeneration.
    Hilbert {
        #[arg(long, num_args = 2, value_names = ["D", "N"])]
        idn: Option<Vec<u32>>,
        #[arg(long)]
        lattice: Option<String>,
        /// Square-free ideal JSON: inline or a file path.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Run the invariant suites; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest lattice used in exhaustive parts.
        #[arg(long, default_value_t = 12)]
        max_size: usize,
    },
    /// The face of the interval lattice where the interval criterion
    /// holds but the variety is singular.
    Counterexample,
}

fn big(x: impl ToString) -> Value {
    json!(x.to_string())
}

fn lattice_body(l: &DistributiveLattice) -> Value {
    let p = l.poset();
    let jp = l.j_poset();
    json!({
        "size": l.len(),
        "dim": l.dim(),
        "elements": p.labels().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "covers": p.covers().iter()
            .map(|&(u, v)| [p.label(u).to_string(), p.label(v).to_string()])
            .collect::<Vec<_>>(),
        "join_irreducibles": jp.labels().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "maximal_chains": big(fixed_point_mult(l)),
        "incomparable_pairs": l.incomparable_pairs().len(),
    })
}

fn face_body(cone: &Cone, d: &[usize]) -> Result<Value, String> {
    let l = cone.lattice();
    let jp = l.j_poset();
    let face = cone.face(d).map_err(|e| e.to_string())?;
    let verdict = is_smooth_face(cone, d).map_err(|e| e.to_string())?;
    let criterion = gl_criterion(l, d).map_err(|e| e.to_string())?;
    let point = cone.distinguished_point(d).map_err(|e| e.to_string())?;
    Ok(json!({
        "d": d.iter().map(|&x| l.poset().label(x).to_string()).collect::<Vec<_>>(),
        "generators": face.w.iter().map(|&g| cone.gen_label(g)).collect::<Vec<_>>(),
        "face_dim": face.geometry.face_dim,
        "orbit_dim": face.geometry.orbit_dim,
        "ambient_dim": face.geometry.ambient_dim,
        "h_poset": {
            "vertices": face.h.vertices.iter().map(|&v| jp.label(v).to_string()).collect::<Vec<_>>(),
            "edges": face.h.edges.iter()
                .map(|&(u, v)| [jp.label(u).to_string(), jp.label(v).to_string()])
                .collect::<Vec<_>>(),
            "marked": face.h.marked.iter().map(|&v| jp.label(v).to_string()).collect::<Vec<_>>(),
            "components": face.h.components.len(),
        },
        "distinguished_point": point,
        "status": status_str(verdict.status),
        "rank": verdict.rank,
        "invariant_factors": verdict.invariant_factors.iter().map(big).collect::<Vec<_>>(),
        "dependency": verdict.dependency.as_ref().map(|dep| {
            verdict.kept.iter().zip(dep)
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(&k, c)| json!({
                    "generator": cone.gen_label(verdict.generators[k]),
                    "coefficient": big(c),
                }))
                .collect::<Vec<_>>()
        }),
        "interval_criterion": criterion,
    }))
}

/// Lets `--face '["(1,2)"]'` address tuple-labeled elements: a name
/// that reads as a parenthesized integer tuple becomes that tuple.
fn normalize_label(e: Elem) -> Elem {
    let Elem::Name(s) = &e else { return e };
    let Some(inner) = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')) else {
        return e;
    };
    match inner.split(',').map(|p| p.trim().parse()).collect::<Result<Vec<u32>, _>>() {
        Ok(t) if !t.is_empty() => Elem::tuple(&t),
        _ => e,
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Smooth => "smooth",
        Status::Singular => "singular",
    }
}

fn run_lattice(source: &Source) -> Result<(Value, ExitCode), String> {
    let l = source.build()?;
    Ok((envelope("lattice", lattice_body(&l)), ExitCode::SUCCESS))
}

fn run_faces(source: &Source, face: Option<&str>) -> Result<(Value, ExitCode), String> {
    let l = source.build()?;
    let cone = Cone::new(&l);
    if let Some(text) = face {
        let labels: Vec<Elem> = serde_json::from_str::<Vec<Elem>>(text)
            .map_err(|e| format!("invalid --face JSON: {e}"))?
            .into_iter()
            .map(normalize_label)
            .collect();
        let mut d = l
            .indices_of(&labels)
            .ok_or_else(|| "face contains labels not in the lattice".to_string())?;
        d.sort_unstable();
        if !l.is_embedded_sublattice(&d) {
            return Err("the given subset is not an embedded sublattice".into());
        }
        return Ok((envelope("faces", face_body(&cone, &d)?), ExitCode::SUCCESS));
    }
    if l.len() > 16 {
        return Err(format!(
            "face enumeration guard: lattice has {} elements (max 16)",
            l.len()
        ));
    }
    let subs = l.enumerate_embedded_sublattices().map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for d in &subs {
        let verdict = is_smooth_face(&cone, d).map_err(|e| e.to_string())?;
        let (fd, od) = if d.is_empty() {
            (cone.ambient_dim(), 0)
        } else {
            let g = cone.face_geometry(d).map_err(|e| e.to_string())?;
            (g.face_dim, g.orbit_dim)
        };
        rows.push(json!({
            "d": d.iter().map(|&x| l.poset().label(x).to_string())
                .collect::<Vec<_>>().join(" "),
            "generators": verdict.generators.len(),
            "face_dim": fd,
            "orbit_dim": od,
            "status": status_str(verdict.status),
        }));
    }
    let body = json!({
        "lattice_size": l.len(),
        "faces": rows.len(),
        "table": rows,
    });
    Ok((envelope("faces", body), ExitCode::SUCCESS))
}

fn run_sing(dn: &[u32], exhaustive: bool) -> Result<(Value, ExitCode), String> {
    let (d, n) = (dn[0], dn[1]);
    let locus = singular_locus_idn(d, n).map_err(|e| e.to_string())?;
    let windows: Vec<Value> = locus
        .windows
        .iter()
        .map(|w| {
            json!({
                "i": w.window.i,
                "j": w.window.j,
                "mu": Elem::tuple(&w.window.mu).to_string(),
                "lambda": Elem::tuple(&w.window.lambda).to_string(),
                "generators": w.w_labels.join(", "),
                "matches_diamond": w.matches_diamond,
                "face_dim": w.geometry.face_dim,
                "status": status_str(w.verdict.status),
                "multiplicity": w.multiplicity.to_string(),
            })
        })
        .collect();
    let mut ok = locus.pure_codim3 && locus.windows.iter().all(|w| w.matches_diamond);
    let mut body = json!({
        "d": d,
        "n": n,
        "window_count": locus.windows.len(),
        "windows": windows,
        "pure_codim3": locus.pure_codim3,
    });
    if exhaustive {
        let scan = smoothness_equivalence_scan(d, n).map_err(|e| e.to_string())?;
        ok &= scan.disagreements.is_empty();
        body["scan"] = json!({
            "faces": scan.faces,
            "smooth_faces": scan.smooth_faces,
            "disagreements": scan.disagreements.iter()
                .map(|x| x.d_labels.join(" "))
                .collect::<Vec<_>>(),
        });
    }
    let code = if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    Ok((envelope("sing", body), code))
}

#[allow(clippy::type_complexity)]
fn run_mult(
    idn_args: Option<&[u32]>,
    window: Option<&[u32]>,
    jblock: Option<&[u32]>,
    union: &[u32],
    lattice: Option<&str>,
) -> Result<(Value, ExitCode), String> {
    let given = [
        idn_args.is_some(),
        window.is_some(),
        jblock.is_some(),
        lattice.is_some(),
    ]
    .iter()
    .filter(|x| **x)
    .count();
    if given != 1 {
        return Err("give exactly one of --idn, --window, --jblock, --lattice".into());
    }
    if !union.is_empty() && jblock.is_none() {
        return Err("--union requires --jblock".into());
    }
    let body = if let Some(dn) = idn_args {
        let (d, n) = (dn[0], dn[1]);
        let l = idn(d, n).map_err(|e| e.to_string())?;
        let chains = fixed_point_mult(&l);
        let hook = hook_mult(d, n).map_err(|e| e.to_string())?;
        json!({
            "kind": "fixed_point",
            "d": d,
            "n": n,
            "multiplicity": big(&chains),
            "hook_formula": big(&hook),
            "agree": chains == hook,
        })
    } else if let Some(w) = window {
        let spec = FaceMultSpec::Window {
            d: w[0],
            n: w[1],
            i: w[2],
            j: w[3],
        };
        json!({
            "kind": "window",
            "d": w[0], "n": w[1], "i": w[2], "j": w[3],
            "multiplicity": big(face_mult(&spec).map_err(|e| e.to_string())?),
        })
    } else if let Some(b) = jblock {
        let n = b[0];
        let mut blocks = vec![(b[1], b[2])];
        for pair in union.chunks(2) {
            blocks.push((pair[0], pair[1]));
        }
        blocks.sort_unstable();
        let spec = if blocks.len() == 1 {
            FaceMultSpec::JBlock {
                n,
                i: blocks[0].0,
                k: blocks[0].1,
            }
        } else {
            FaceMultSpec::JBlockUnion {
                n,
                blocks: blocks.clone(),
            }
        };
        json!({
            "kind": if blocks.len() == 1 { "jblock" } else { "jblock_union" },
            "n": n,
            "blocks": blocks.iter().map(|&(i, k)| json!({"i": i, "k": k})).collect::<Vec<_>>(),
            "multiplicity": big(face_mult(&spec).map_err(|e| e.to_string())?),
            "catalan_factors": blocks.iter()
                .map(|&(_, k)| catalan(u64::from(k) + 2).to_string())
                .collect::<Vec<_>>(),
        })
    } else {
        let l = lattice_from_file(lattice.unwrap()).map_err(|e| e.to_string())?;
        json!({
            "kind": "fixed_point",
            "size": l.len(),
            "multiplicity": big(fixed_point_mult(&l)),
        })
    };
    Ok((envelope("mult", body), ExitCode::SUCCESS))
}

fn hilbert_body(h: &HilbertData, ideal: &SqFreeIdeal) -> Value {
    json!({
        "n_vars": ideal.n_vars,
        "generators": ideal.generators,
        "counts": h.counts.iter().map(big).collect::<Vec<_>>(),
        "krull_dim": h.krull_dim,
        "degree": big(&h.degree),
        "numerator": h.numerator.iter().map(big).collect::<Vec<_>>(),
        "phi": (0..=5u64).map(|m| h.phi(m).to_string()).collect::<Vec<_>>(),
    })
}

fn run_hilbert(
    idn_args: Option<&[u32]>,
    lattice: Option<&str>,
    ideal: Option<&str>,
) -> Result<(Value, ExitCode), String> {
    let given = [idn_args.is_some(), lattice.is_some(), ideal.is_some()]
        .iter()
        .filter(|x| **x)
        .count();
    if given != 1 {
        return Err("give exactly one of --idn, --lattice, --ideal".into());
    }
    if let Some(text) = ideal {
        let source = if std::path::Path::new(text).exists() {
            std::fs::read_to_string(text).map_err(|e| format!("reading {text}: {e}"))?
        } else {
            text.to_string()
        };
        let i = ideal_from_str(&source).map_err(|e| e.to_string())?;
        let h = sqfree_hilbert(&i).map_err(|e| e.to_string())?;
        return Ok((envelope("hilbert", hilbert_body(&h, &i)), ExitCode::SUCCESS));
    }
    let l = if let Some(dn) = idn_args {
        idn(dn[0], dn[1]).map_err(|e| e.to_string())?
    } else {
        lattice_from_file(lattice.unwrap()).map_err(|e| e.to_string())?
    };
    let sr = stanley_reisner_ideal(&l);
    let h = sqfree_hilbert(&sr).map_err(|e| e.to_string())?;
    let mut body = hilbert_body(&h, &sr);
    body["lattice_size"] = json!(l.len());
    body["degree_is_chain_count"] = json!(h.degree == fixed_point_mult(&l));
    if l.len() <= 12 {
        let r = lattice_hilbert_crosscheck(&l, 3).map_err(|e| e.to_string())?;
        body["crosscheck"] = json!({
            "rows": r.rows.iter().map(|row| json!({
                "m": row.m,
                "multichains": row.multichains.to_string(),
                "sr_phi": row.sr_phi.to_string(),
                "semigroup": row.semigroup.to_string(),
            })).collect::<Vec<_>>(),
            "all_equal": r.all_equal,
        });
    }
    Ok((envelope("hilbert", body), ExitCode::SUCCESS))
}

fn run_verify(suite: &str, max_size: usize) -> Result<(Value, ExitCode), String> {
    if suite != "all" && !hibi_toric::verify::suite_names().contains(&suite) {
        return Err(format!(
            "unknown suite '{suite}'; expected all, {}",
            hibi_toric::verify::suite_names().join(", ")
        ));
    }
    let checks = run_suites(suite, max_size);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let body = json!({
        "suite": suite,
        "max_size": max_size,
        "total": checks.len(),
        "failed": failed,
        "checks": checks.iter().map(|c| json!({
            "suite": c.suite,
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    });
    let code = if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    Ok((envelope("verify", body), code))
}

fn run_counterexample() -> Result<(Value, ExitCode), String> {
    let l = counterexample_lattice();
    let cone = Cone::new(&l);
    let d = l
        .indices_of(&[Elem::tuple(&[1, 5, 6])])
        .expect("(1,5,6) is in the interval lattice");
    let mut body = json!({
        "lattice": lattice_body(&l),
        "face": face_body(&cone, &d)?,
        "note": "the interval criterion holds yet the face is singular: \
                 its six generators have rank 4 and span only dimension 5",
    });
    body["face"]["d"] = json!(["(1,5,6)"]);
    Ok((envelope("counterexample", body), ExitCode::SUCCESS))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Lattice { source } => run_lattice(source),
        Command::Faces { source, face } => run_faces(source, face.as_deref()),
        Command::Sing { idn, exhaustive } => run_sing(idn, *exhaustive),
        Command::Mult {
            idn,
            window,
            jblock,
            union,
            lattice,
        } => run_mult(
            idn.as_deref(),
            window.as_deref(),
            jblock.as_deref(),
            union,
            lattice.as_deref(),
        ),
        Command::Hilbert { idn, lattice, ideal } => {
            run_hilbert(idn.as_deref(), lattice.as_deref(), ideal.as_deref())
        }
        Command::Verify { suite, max_size } => run_verify(suite, *max_size),
        Command::Counterexample => run_counterexample(),
    };
    let (report, code) = match result {
        Ok(x) => x,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Md => render_markdown(&report),
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: writing {path}: {e}");
            return ExitCode::from(2);
        }
    } else {
        print!("{text}");
    }
    code
}
