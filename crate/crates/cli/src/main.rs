use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use linarr::arvola::{arrangement_presentation, raw_presentation};
use linarr::constructions::{
    build_parallel_extension, build_pencil_extension, check_lattice_constancy, compare_arrangements, verify_arb_lines,
    verify_paper_example, verify_theorem_main, ArbReport, Bijection, CompareRoute, MainReport,
};
use linarr::exec::Exec;
use linarr::formats::{parse_arr, parse_fam, render_arr};
use linarr::geom::Arrangement;
use linarr::group::{abelianization, simplify, AbelianizationResult, Presentation};
use linarr::poset::{build_affine_poset, IntersectionPoint, Location};
use linarr::rational::fmt_rational;
use linarr::svg::render_svg;
use linarr::Error;

const EXIT_NO_MATCH: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "linarr", version, about = "Line arrangement lattices, fundamental groups and pencil constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print intersection points, parallel classes and Betti numbers.
    Lattice {
        file: PathBuf,
        /// Include the line at infinity and its points.
        #[arg(long)]
        projective: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the fundamental-group presentation of a real arrangement.
    Pi1 {
        file: PathBuf,
        #[command(flatten)]
        form: Pi1Form,
        #[arg(long)]
        json: bool,
    },
    /// Compare the fundamental groups of two real arrangements.
    ComparePi1 {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Verify Theorem "main" (and Theorem "arb" with --all-lines).
    Verify(VerifyArgs),
    /// Check lattice constancy of a family at its sample parameters.
    IsotopyCheck {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a pencil or parallel extension and print it as an .arr file.
    Build(BuildArgs),
    /// Render a real arrangement as an SVG figure.
    Svg {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Pi1Form {
    /// Edge generators and vertex relators, unsimplified.
    #[arg(long)]
    raw: bool,
    /// Line generators after simplification.
    #[arg(long)]
    simplified: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run the built-in worked example.
    #[arg(long, conflicts_with_all = ["arrangement", "line", "mult", "all_lines"])]
    paper_example: bool,
    #[arg(long, required_unless_present = "paper_example")]
    arrangement: Option<PathBuf>,
    #[arg(long, required_unless_present = "paper_example")]
    line: Option<String>,
    #[arg(long, required_unless_present = "paper_example", value_parser = clap::value_parser!(u32).range(3..))]
    mult: Option<u32>,
    /// Also compare the canonical presentations for every line of the file.
    #[arg(long)]
    all_lines: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("kind").required(true).args(["pencil", "parallel"]))]
struct BuildArgs {
    /// Attach a pencil through a point of --line.
    #[arg(long)]
    pencil: bool,
    /// Attach --mult − 1 parallel lines.
    #[arg(long)]
    parallel: bool,
    file: PathBuf,
    #[arg(long, required_if_eq("pencil", "true"))]
    line: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
    mult: u32,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if matches!(e, Error::Parse { .. }) { EXIT_PARSE } else { EXIT_DOMAIN };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Lattice { file, projective, json } => cmd_lattice(&read_arr(&file)?, projective, json),
        Command::Pi1 { file, form, json } => cmd_pi1(&read_arr(&file)?, form.raw, json),
        Command::ComparePi1 { first, second, json } => cmd_compare(&read_arr(&first)?, &read_arr(&second)?, json),
        Command::Verify(args) => cmd_verify(args),
        Command::IsotopyCheck { file, json } => cmd_isotopy(&file, json),
        Command::Build(args) => cmd_build(args),
        Command::Svg { file, output } => {
            let svg = render_svg(&read_arr(&file)?)?;
            emit(svg, output.as_deref())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_PARSE, message: format!("cannot read {}: {e}", path.display()) })
}

fn read_arr(path: &Path) -> Result<Arrangement, Failure> {
    parse_arr(&read(path)?).map_err(|e| located(path, e))
}

fn located(path: &Path, e: Error) -> Failure {
    let f = Failure::from(e);
    Failure { message: format!("{}: {}", path.display(), f.message), ..f }
}

fn emit(text: String, output: Option<&Path>) -> CmdResult {
    match output {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| Failure { code: EXIT_DOMAIN, message: format!("cannot write {}: {e}", path.display()) })?;
            Ok((String::new(), 0))
        }
        None => Ok((text, 0)),
    }
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
}

fn labels_of(p: &IntersectionPoint, labels: &[String]) -> Vec<String> {
    p.incident.iter().map(|&i| labels[i].clone()).collect()
}

fn location_text(p: &IntersectionPoint) -> String {
    match &p.location {
        Location::Affine(pt) => format!("({}, {})", pt.x, pt.y),
        Location::AtInfinity((a, b)) => format!("at infinity, direction ({a} : {b})"),
    }
}

fn location_json(p: &IntersectionPoint) -> Value {
    match &p.location {
        Location::Affine(pt) => json!({ "x": pt.x.to_string(), "y": pt.y.to_string() }),
        Location::AtInfinity((a, b)) => json!({ "at_infinity": [a.to_string(), b.to_string()] }),
    }
}

fn cmd_lattice(arr: &Arrangement, projective: bool, json_out: bool) -> CmdResult {
    let affine = build_affine_poset(arr);
    let betti = affine.betti();
    let (labels, points) = if projective {
        let p = affine.projective();
        (p.labels.clone(), p.points)
    } else {
        (affine.labels.clone(), affine.points.clone())
    };
    if json_out {
        let pts: Vec<Value> = points
            .iter()
            .map(|p| json!({ "location": location_json(p), "lines": labels_of(p, &labels), "multiplicity": p.multiplicity() }))
            .collect();
        let classes: Vec<Value> = affine
            .classes
            .iter()
            .map(|c| {
                let lines: Vec<&String> = c.members.iter().map(|&i| &affine.labels[i]).collect();
                json!({ "direction": [c.direction.0.to_string(), c.direction.1.to_string()], "lines": lines })
            })
            .collect();
        let v = json!({ "lines": labels, "projective": projective, "points": pts, "parallel_classes": classes, "betti": betti });
        return Ok((pretty(v), 0));
    }
    let mut out = String::new();
    writeln!(out, "points ({}):", points.len()).unwrap();
    for p in &points {
        writeln!(
            out,
            "  {}  [{}]  multiplicity {}",
            location_text(p),
            labels_of(p, &labels).join(" "),
            p.multiplicity()
        )
        .unwrap();
    }
    writeln!(out, "parallel classes:").unwrap();
    for c in affine.classes.iter().filter(|c| c.members.len() > 1) {
        let lines: Vec<&str> = c.members.iter().map(|&i| affine.labels[i].as_str()).collect();
        writeln!(out, "  direction ({} : {})  [{}]", c.direction.0, c.direction.1, lines.join(" ")).unwrap();
    }
    if projective {
        writeln!(out, "multiple points per line:").unwrap();
        for (i, l) in labels.iter().enumerate() {
            let mut mults: Vec<usize> = points
                .iter()
                .filter(|p| p.incident.contains(&i) && p.multiplicity() >= 3)
                .map(|p| p.multiplicity())
                .collect();
            mults.sort_unstable_by(|a, b| b.cmp(a));
            if !mults.is_empty() {
                let m: Vec<String> = mults.iter().map(usize::to_string).collect();
                writeln!(out, "  {l}: {}", m.join(", ")).unwrap();
            }
        }
    }
    writeln!(out, "betti: b1 = {}, b2 = {}", betti.b1, betti.b2).unwrap();
    Ok((out, 0))
}

fn real_only(arr: &Arrangement) -> Result<(), Failure> {
    match arr.lines().iter().find(|l| !l.is_real()) {
        Some(l) => Err(Error::NonReal(l.label.clone()).into()),
        None => Ok(()),
    }
}

fn abelianization_json(a: &AbelianizationResult) -> Value {
    let torsion: Vec<String> = a.torsion.iter().map(|t| t.to_string()).collect();
    json!({ "free_rank": a.free_rank, "torsion": torsion })
}

fn presentation_text(p: &Presentation) -> String {
    let names: Vec<&str> = p.generators().iter().map(|g| g.name.as_str()).collect();
    let mut out = format!("generators ({}): {}\nrelators ({}):\n", names.len(), names.join(" "), p.relators().len());
    for r in p.relators() {
        writeln!(out, "  {}", p.word_string(r)).unwrap();
    }
    out
}

fn cmd_pi1(arr: &Arrangement, raw: bool, json_out: bool) -> CmdResult {
    real_only(arr)?;
    let p = if raw { raw_presentation(arr)? } else { simplify(&arrangement_presentation(arr)?).0 };
    let ab = abelianization(&p);
    if json_out {
        let mut v = serde_json::to_value(p.to_json()).expect("presentation serializes");
        v["abelianization"] = abelianization_json(&ab);
        return Ok((pretty(v), 0));
    }
    Ok((format!("{}abelianization: {ab}\n", presentation_text(&p)), 0))
}

fn bijection_json(b: &Bijection) -> Value {
    Value::Array(b.iter().map(|(x, y)| json!([x, y])).collect())
}

fn cmd_compare(a: &Arrangement, b: &Arrangement, json_out: bool) -> CmdResult {
    real_only(a)?;
    real_only(b)?;
    let c = compare_arrangements(a, b, Exec::default())?;
    let route = match c.route {
        CompareRoute::Direct => "direct",
        CompareRoute::Canonical => "canonical",
    };
    let code = if c.bijection.is_some() { 0 } else { EXIT_NO_MATCH };
    if json_out {
        let v = json!({
            "result": if c.bijection.is_some() { "MATCH" } else { "NO-MATCH" },
            "route": route,
            "bijection": c.bijection.as_ref().map(bijection_json),
        });
        return Ok((pretty(v), code));
    }
    let out = match &c.bijection {
        Some(b) => {
            let pairs: Vec<String> = b.iter().map(|(x, y)| format!("{x} -> {y}")).collect();
            format!("MATCH ({route})\n  {}\n", pairs.join("\n  "))
        }
        None => format!("NO-MATCH ({route})\n"),
    };
    Ok((out, code))
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main_report_text(r: &MainReport) -> String {
    let mut out = String::new();
    writeln!(out, "Theorem \"main\" for line {} with m = {} (sweep shear {})", r.h, r.m, fmt_rational(&r.shear))
        .unwrap();
    writeln!(out, "  B_H:   {}", r.b_h.lines().iter().map(|l| l.render()).collect::<Vec<_>>().join(", ")).unwrap();
    writeln!(out, "  B_inf: {}", r.b_inf.lines().iter().map(|l| l.render()).collect::<Vec<_>>().join(", ")).unwrap();
    writeln!(out, "  [{}] pencil and parallel attachments", mark(r.attachments_valid)).unwrap();
    writeln!(out, "  [{}] Lemma \"present\": exterior model matches target", mark(r.lemma_match.is_some())).unwrap();
    let g = r.g_image.as_deref().map(|x| format!(" (g -> {x})")).unwrap_or_default();
    writeln!(
        out,
        "  [{}] canonical presentation matches B_inf{g}: {} generators, {} relators",
        mark(r.canonical_match.is_some()),
        r.canonical.gen_count(),
        r.canonical.relators().len()
    )
    .unwrap();
    writeln!(
        out,
        "  [{}] betti ({}, {}) vs ({}, {})",
        mark(r.betti_h == r.betti_inf),
        r.betti_h.b1,
        r.betti_h.b2,
        r.betti_inf.b1,
        r.betti_inf.b2
    )
    .unwrap();
    writeln!(
        out,
        "  [{}] abelianization {} vs {}",
        mark(r.abelianization_h == r.abelianization_inf),
        r.abelianization_h,
        r.abelianization_inf
    )
    .unwrap();
    let list = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join(", ") };
    writeln!(
        out,
        "  [INFO] cones {}; lines with two points of multiplicity {}: B_H: {}; B_inf: {}",
        if r.projective_isomorphic { "isomorphic" } else { "NOT isomorphic" },
        r.m,
        list(&r.witness_h),
        list(&r.witness_inf)
    )
    .unwrap();
    out
}

fn main_report_json(r: &MainReport) -> Value {
    json!({
        "line": r.h,
        "m": r.m,
        "shear": fmt_rational(&r.shear),
        "b_h": r.b_h.lines().iter().map(|l| l.render()).collect::<Vec<_>>(),
        "b_inf": r.b_inf.lines().iter().map(|l| l.render()).collect::<Vec<_>>(),
        "attachments_valid": r.attachments_valid,
        "lemma_match": r.lemma_match.as_ref().map(bijection_json),
        "canonical_match": r.canonical_match.as_ref().map(bijection_json),
        "g_image": r.g_image,
        "generators": r.canonical.gen_count(),
        "relators": r.canonical.relators().len(),
        "betti_h": r.betti_h,
        "betti_inf": r.betti_inf,
        "abelianization_h": abelianization_json(&r.abelianization_h),
        "abelianization_inf": abelianization_json(&r.abelianization_inf),
        "projective_isomorphic": r.projective_isomorphic,
        "witness_h": r.witness_h,
        "witness_inf": r.witness_inf,
        "passed": r.passed(),
    })
}

fn arb_report_text(r: &ArbReport) -> String {
    let mut out = format!("Theorem \"arb\" across {} lines with m = {}\n", r.lines.len(), r.m);
    for ((h, lemma), (_, b)) in r.lemma_matches.iter().zip(&r.against_parallel) {
        writeln!(
            out,
            "  {h}: lemma {}, canonical vs B_inf {}",
            mark(*lemma),
            if b.is_some() { "MATCH" } else { "NO-MATCH" }
        )
        .unwrap();
    }
    let matched = r.pairwise.iter().filter(|(_, _, b)| b.is_some()).count();
    writeln!(out, "  pairwise: {matched}/{} MATCH", r.pairwise.len()).unwrap();
    out
}

fn arb_report_json(r: &ArbReport) -> Value {
    json!({
        "lines": r.lines,
        "m": r.m,
        "lemma": r.lemma_matches.iter().map(|(h, ok)| json!({ "line": h, "match": ok })).collect::<Vec<_>>(),
        "against_parallel": r.against_parallel.iter().map(|(h, b)| json!({ "line": h, "match": b.is_some() })).collect::<Vec<_>>(),
        "pairwise": r.pairwise.iter().map(|(x, y, b)| json!({ "pair": [x, y], "match": b.is_some() })).collect::<Vec<_>>(),
        "passed": r.passed(),
    })
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let (report, arb) = if args.paper_example {
        (verify_paper_example()?, None)
    } else {
        let path = args.arrangement.expect("required by clap");
        let a = read_arr(&path)?;
        let line = args.line.expect("required by clap");
        let m = args.mult.expect("required by clap") as usize;
        if a.index_of(&line).is_none() {
            return Err(Failure {
                code: EXIT_USAGE,
                message: format!("no line labelled `{line}` in {}", path.display()),
            });
        }
        real_only(&a)?;
        let report = verify_theorem_main(&a, &line, m)?;
        let arb = if args.all_lines { Some(verify_arb_lines(&a, &a.labels(), m, Exec::default())?) } else { None };
        (report, arb)
    };
    let passed = report.passed() && arb.as_ref().is_none_or(ArbReport::passed);
    let code = if passed { 0 } else { EXIT_NO_MATCH };
    if args.json {
        let v =
            json!({ "main": main_report_json(&report), "arb": arb.as_ref().map(arb_report_json), "passed": passed });
        return Ok((pretty(v), code));
    }
    let mut out = main_report_text(&report);
    if let Some(arb) = &arb {
        out.push_str(&arb_report_text(arb));
    }
    writeln!(out, "{}", mark(passed)).unwrap();
    Ok((out, code))
}

fn cmd_isotopy(path: &Path, json_out: bool) -> CmdResult {
    let fam = parse_fam(&read(path)?).map_err(|e| located(path, e))?;
    let r = check_lattice_constancy(&fam)?;
    let code = if r.constant { 0 } else { EXIT_NO_MATCH };
    if json_out {
        let samples: Vec<String> = r.samples.iter().map(fmt_rational).collect();
        let witness = r.witness.as_ref().map(|w| json!({ "t": fmt_rational(&w.t), "change": w.change.to_string() }));
        return Ok((pretty(json!({ "constant": r.constant, "samples": samples, "witness": witness })), code));
    }
    let out = match &r.witness {
        None => format!("constant across {} samples\n", r.samples.len()),
        Some(w) => format!("NOT constant: at t = {}, {}\n", fmt_rational(&w.t), w.change),
    };
    Ok((out, code))
}

fn cmd_build(args: BuildArgs) -> CmdResult {
    let a = read_arr(&args.file)?;
    real_only(&a)?;
    let m = args.mult as usize;
    let b = if args.pencil {
        let line = args.line.expect("required by clap");
        if a.index_of(&line).is_none() {
            return Err(Failure { code: EXIT_USAGE, message: format!("no line labelled `{line}`") });
        }
        build_pencil_extension(&a, &line, m)?.0
    } else {
        build_parallel_extension(&a, m)?.0
    };
    emit(render_arr(&b), args.output.as_deref())
}
