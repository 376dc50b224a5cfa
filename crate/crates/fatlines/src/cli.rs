//! Command-line front end: generation, invariant reports, classification, the
//! theorem-verification table, and the JSONL explorer.
//!
//! Exit codes partition outcomes: 0 success, 2 bad input, 3 computation
//! failure, 4 theorem inconsistency, 5 I/O trouble. All reports are JSON on
//! stdout and carry the tool version plus the coefficient field; coefficient
//! lists are decimal strings so that large exact integers survive any JSON
//! reader. FATLINES_FIELD ("Q" or "GFP:<p>") sets the field when a command
//! does not read it from a config document.

use crate::classify::{
    acm_certificate, check_bc_section, classify, default_tmax, AcmCertificate, AcmVerdict,
    SectionStructure, Structure,
};
use crate::configgen::{generate, parse_config, serialize_config, Family, GenSpec};
use crate::exactalg::{integer_normalized, FieldSpec, Scalar};
use crate::geometry::Hyperplane;
use crate::symbolic::{
    alpha, alpha_differences, hilbert, type_of, Ambient, Configuration, TypeReport,
};
use crate::{Error, Result, VERSION};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "fatlines", version, about = "exact invariants of point and line configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a configuration and print its JSON document
    Gen {
        /// star-points | pseudostar | cone | coplanar | skew | fig2 | collinear | random
        #[arg(long)]
        family: String,
        /// line or plane count for star-points, pseudostar, cone
        #[arg(long)]
        d: Option<usize>,
        /// component count for coplanar, collinear
        #[arg(long)]
        n: Option<usize>,
        /// line count for random
        #[arg(long)]
        lines: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Q or GFP:<p>; defaults to FATLINES_FIELD, then Q
        #[arg(long)]
        field: Option<String>,
    },
    /// Least degree of a nonzero form in the m-th symbolic power
    Alpha {
        config: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Hilbert function values of the m-th symbolic power's quotient
    Hilbert {
        config: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        tmax: usize,
    },
    /// Alpha at multiplicities one and two, with witnesses
    Type { config: PathBuf },
    /// Consecutive alpha differences up to a multiplicity
    Diffs {
        config: PathBuf,
        #[arg(long)]
        mmax: usize,
    },
    /// Structure, ACM evidence, and theorem consistency for a line configuration
    Classify {
        config: PathBuf,
        /// default: component count + 2
        #[arg(long)]
        tmax: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the built-in verification table over the generated families
    Verify {
        /// largest d for the structured families; at least 3
        #[arg(long)]
        dmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classify seeded random line sets, appending JSONL records
    Explore {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        lines: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "explore.jsonl")]
        out: PathBuf,
    },
}

fn default_field(flag: Option<&str>) -> Result<FieldSpec> {
    if let Some(s) = flag {
        return FieldSpec::parse_token(s);
    }
    match std::env::var("FATLINES_FIELD") {
        Ok(s) => FieldSpec::parse_token(&s),
        Err(_) => Ok(FieldSpec::Q),
    }
}

fn load_config(path: &PathBuf) -> Result<Configuration> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}

fn require_lines(config: &Configuration) -> Result<()> {
    if config.ambient() != Ambient::P3 {
        return Err(Error::SchemaError(
            "this command needs a P3 line configuration".into(),
        ));
    }
    Ok(())
}

fn field_json(field: FieldSpec) -> Value {
    match field {
        FieldSpec::Q => json!("Q"),
        FieldSpec::GFp(p) => json!({ "GFp": p }),
    }
}

fn coeff_strings(v: &[Scalar]) -> Vec<String> {
    integer_normalized(v).iter().map(|x| x.to_string()).collect()
}

fn plane_json(h: &Hyperplane) -> Value {
    json!(coeff_strings(h.form()))
}

fn type_json(t: &TypeReport) -> Value {
    json!({
        "alpha1": t.alpha1,
        "alpha2": t.alpha2,
        "t": t.t,
        "witness1": coeff_strings(&t.witness1),
        "witness2": coeff_strings(&t.witness2),
    })
}

fn verdict_json(v: &AcmVerdict) -> Value {
    match v {
        AcmVerdict::ConsistentUpTo(t) => json!({ "ConsistentUpTo": t }),
        AcmVerdict::FailsAt(t) => json!({ "FailsAt": t }),
    }
}

fn verdict_text(v: &AcmVerdict) -> String {
    match v {
        AcmVerdict::ConsistentUpTo(t) => format!("ConsistentUpTo({t})"),
        AcmVerdict::FailsAt(t) => format!("FailsAt({t})"),
    }
}

fn acm_json(c: &AcmCertificate) -> Value {
    json!({
        "tmax": c.tmax,
        "hyperplane": plane_json(&c.hyperplane),
        "comparisons": c.comparisons,
        "verdict": verdict_json(&c.verdict),
    })
}

fn structure_json(s: &Structure) -> Value {
    match s {
        Structure::Coplanar(h) => json!({ "Coplanar": { "plane": plane_json(h) } }),
        Structure::Pseudostar(cert) => json!({ "Pseudostar": {
            "d": cert.d,
            "planes": cert.planes.iter().map(plane_json).collect::<Vec<_>>(),
            "incidence": cert.incidence,
        }}),
        Structure::Other => json!("Other"),
    }
}

fn structure_text(s: &Structure) -> &'static str {
    match s {
        Structure::Coplanar(_) => "Coplanar",
        Structure::Pseudostar(_) => "Pseudostar",
        Structure::Other => "Other",
    }
}

fn report_header(config: &Configuration) -> Vec<(&'static str, Value)> {
    vec![
        ("version", json!(VERSION)),
        ("field", field_json(config.field())),
        ("label", json!(config.label())),
    ]
}

fn print_report(fields: Vec<(&'static str, Value)>) {
    let mut map = serde_json::Map::new();
    for (k, v) in fields {
        map.insert(k.to_string(), v);
    }
    println!("{}", Value::Object(map));
}

fn cmd_gen(
    family: &str,
    d: Option<usize>,
    n: Option<usize>,
    lines: Option<usize>,
    seed: u64,
    field: Option<&str>,
) -> Result<()> {
    let field = default_field(field)?;
    let want = match family {
        "star-points" | "pseudostar" | "cone" => "--d",
        "coplanar" | "collinear" => "--n",
        "random" => "--lines",
        _ => "",
    };
    let mut param = None;
    for (flag, v) in [("--d", d), ("--n", n), ("--lines", lines)] {
        if flag == want {
            param = v;
        } else if v.is_some() {
            return Err(Error::SchemaError(format!(
                "family {family} does not take {flag}"
            )));
        }
    }
    if param.is_none() && !want.is_empty() {
        return Err(Error::SchemaError(format!("family {family} needs {want}")));
    }
    let config = generate(&GenSpec {
        family: Family::named(family, param)?,
        seed,
        field,
    })?;
    println!("{}", serialize_config(&config));
    Ok(())
}

fn cmd_alpha(path: &PathBuf, m: usize) -> Result<()> {
    if m < 1 {
        return Err(Error::SchemaError("--m must be at least 1".into()));
    }
    let config = load_config(path)?;
    let (a, witness) = alpha(&config, m)?;
    let mut fields = report_header(&config);
    fields.push(("m", json!(m)));
    fields.push(("alpha", json!(a)));
    fields.push(("witness", json!(coeff_strings(&witness))));
    print_report(fields);
    Ok(())
}

fn cmd_hilbert(path: &PathBuf, m: usize, tmax: usize) -> Result<()> {
    if m < 1 {
        return Err(Error::SchemaError("--m must be at least 1".into()));
    }
    let config = load_config(path)?;
    let values: Vec<usize> = (0..=tmax).map(|t| hilbert(&config, m, t)).collect();
    let mut fields = report_header(&config);
    fields.push(("m", json!(m)));
    fields.push(("tmax", json!(tmax)));
    fields.push(("values", json!(values)));
    print_report(fields);
    Ok(())
}

fn cmd_type(path: &PathBuf) -> Result<()> {
    let config = load_config(path)?;
    let t = type_of(&config)?;
    let mut fields = report_header(&config);
    fields.push(("alpha1", json!(t.alpha1)));
    fields.push(("alpha2", json!(t.alpha2)));
    fields.push(("t", json!(t.t)));
    fields.push(("witness1", json!(coeff_strings(&t.witness1))));
    fields.push(("witness2", json!(coeff_strings(&t.witness2))));
    print_report(fields);
    Ok(())
}

fn cmd_diffs(path: &PathBuf, mmax: usize) -> Result<()> {
    if mmax < 2 {
        return Err(Error::SchemaError("--mmax must be at least 2".into()));
    }
    let config = load_config(path)?;
    let diffs = alpha_differences(&config, mmax)?;
    let mut fields = report_header(&config);
    fields.push(("mmax", json!(mmax)));
    fields.push(("differences", json!(diffs)));
    print_report(fields);
    Ok(())
}

fn cmd_classify(path: &PathBuf, tmax: Option<usize>, seed: u64) -> Result<i32> {
    let config = load_config(path)?;
    require_lines(&config)?;
    let tmax = tmax.unwrap_or_else(|| default_tmax(&config));
    if tmax < 1 {
        return Err(Error::SchemaError("--tmax must be at least 1".into()));
    }
    let report = classify(&config, tmax, seed)?;
    let mut fields = report_header(&config);
    fields.push(("tmax", json!(tmax)));
    fields.push(("seed", json!(seed)));
    fields.push(("type", type_json(&report.type_report)));
    fields.push(("structure", structure_json(&report.structure)));
    fields.push(("acm", acm_json(&report.acm)));
    fields.push(("theorem_consistent", json!(report.theorem_consistent)));
    print_report(fields);
    Ok(if report.theorem_consistent { 0 } else { 4 })
}

struct Table {
    lines: Vec<String>,
    all_ok: bool,
}

impl Table {
    fn new() -> Table {
        Table {
            lines: Vec::new(),
            all_ok: true,
        }
    }

    fn check(&mut self, name: &str, ok: bool, detail: String) {
        if ok {
            self.lines.push(format!("PASS  {name}"));
        } else {
            self.all_ok = false;
            self.lines.push(format!("FAIL  {name}: {detail}"));
        }
    }
}

fn gen_family(family: Family, seed: u64, field: FieldSpec) -> Result<Configuration> {
    generate(&GenSpec {
        family,
        seed,
        field,
    })
}

fn run_verify(dmax: usize, seed: u64) -> Result<i32> {
    let field = default_field(None)?;
    let mut table = Table::new();

    // generic pseudostars have type (d-1, d)
    {
        let mut ok = true;
        let mut detail = String::new();
        for d in 3..=dmax {
            for s in [seed, seed + 1] {
                let cfg = gen_family(Family::PseudostarGeneric(d), s, field)?;
                let t = type_of(&cfg)?;
                if (t.alpha1, t.alpha2) != (d - 1, d) {
                    ok = false;
                    detail = format!("d={d} seed={s}: got ({}, {})", t.alpha1, t.alpha2);
                }
            }
        }
        table.check(
            &format!("pseudostar type (d-1,d) for d=3..{dmax}, 2 seeds"),
            ok,
            detail,
        );
    }

    // star points have type (d-1, d)
    {
        let mut ok = true;
        let mut detail = String::new();
        for d in 3..=dmax {
            let cfg = gen_family(Family::StarPointsP2(d), seed, field)?;
            let t = type_of(&cfg)?;
            if (t.alpha1, t.alpha2) != (d - 1, d) {
                ok = false;
                detail = format!("d={d}: got ({}, {})", t.alpha1, t.alpha2);
            }
        }
        table.check(
            &format!("star points type (d-1,d) for d=3..{dmax}"),
            ok,
            detail,
        );
    }

    // collinear points have type (1,2)
    {
        let mut ok = true;
        let mut detail = String::new();
        for n in 2..=dmax + 1 {
            let cfg = gen_family(Family::CollinearPoints(n), seed, field)?;
            let t = type_of(&cfg)?;
            if (t.alpha1, t.alpha2) != (1, 2) {
                ok = false;
                detail = format!("n={n}: got ({}, {})", t.alpha1, t.alpha2);
            }
        }
        table.check(
            &format!("collinear points type (1,2) for n=2..{}", dmax + 1),
            ok,
            detail,
        );
    }

    // the two reference line configurations
    {
        let skew = gen_family(Family::SkewPair, seed, field)?;
        let t = type_of(&skew)?;
        table.check(
            "skew pair type (2,4)",
            (t.alpha1, t.alpha2) == (2, 4),
            format!("got ({}, {})", t.alpha1, t.alpha2),
        );
        let fig2 = gen_family(Family::Fig2Triple, seed, field)?;
        let t = type_of(&fig2)?;
        table.check(
            "pairwise-meeting triple type (2,4)",
            (t.alpha1, t.alpha2) == (2, 4),
            format!("got ({}, {})", t.alpha1, t.alpha2),
        );
    }

    // the skew pair is the canonical ACM failure
    {
        let skew = gen_family(Family::SkewPair, seed, field)?;
        let cert = acm_certificate(&skew, 4, seed)?;
        let ok = cert.verdict == AcmVerdict::FailsAt(1) && cert.comparisons[1] == (3, 2);
        table.check(
            "skew pair ACM comparison fails at t=1 with (3,2)",
            ok,
            format!(
                "verdict {} comparisons[1] {:?}",
                verdict_text(&cert.verdict),
                cert.comparisons.get(1)
            ),
        );
    }

    // hyperplane-section consistency for the structured families
    {
        let mut ok = true;
        let mut detail = String::new();
        for d in 3..=dmax {
            let families = [
                Family::PseudostarGeneric(d),
                Family::ConeOverStar(d),
                Family::Coplanar(d),
            ];
            for fam in families {
                let cfg = gen_family(fam.clone(), seed + d as u64, field)?;
                let cert = acm_certificate(&cfg, default_tmax(&cfg), seed)?;
                if !matches!(cert.verdict, AcmVerdict::ConsistentUpTo(_)) {
                    ok = false;
                    detail = format!("{}: {}", cfg.label(), verdict_text(&cert.verdict));
                }
                let sec = check_bc_section(&cfg, seed)?;
                if !sec.alpha_match {
                    ok = false;
                    detail = format!(
                        "{}: section alpha {} vs {}",
                        cfg.label(),
                        sec.section_type.alpha1,
                        sec.lines_type.alpha1
                    );
                }
            }
        }
        table.check(
            &format!("sections match Hilbert differences and alpha, d=3..{dmax}"),
            ok,
            detail,
        );
    }

    // sections of pseudostars are stars, of coplanar sets collinear
    {
        let mut ok = true;
        let mut detail = String::new();
        for d in 3..=dmax {
            let cfg = gen_family(Family::PseudostarGeneric(d), seed + 7, field)?;
            let sec = check_bc_section(&cfg, seed)?;
            match sec.structure {
                SectionStructure::Star(ref cert) if cert.d == d => {}
                ref other => {
                    ok = false;
                    detail = format!("pseudostar d={d}: section {other:?}");
                }
            }
            let cop = gen_family(Family::Coplanar(d), seed + 7, field)?;
            let sec = check_bc_section(&cop, seed)?;
            if !matches!(sec.structure, SectionStructure::Collinear(_)) {
                ok = false;
                detail = format!("coplanar n={d}: section not collinear");
            }
        }
        table.check(
            &format!("section structure (star / collinear), d=3..{dmax}"),
            ok,
            detail,
        );
    }

    // classification consistency on families and random draws
    {
        let mut ok = true;
        let mut detail = String::new();
        let mut configs: Vec<Configuration> = Vec::new();
        for d in 3..=dmax {
            configs.push(gen_family(Family::PseudostarGeneric(d), seed, field)?);
            configs.push(gen_family(Family::ConeOverStar(d), seed, field)?);
            configs.push(gen_family(Family::Coplanar(d), seed, field)?);
        }
        configs.push(gen_family(Family::SkewPair, seed, field)?);
        configs.push(gen_family(Family::Fig2Triple, seed, field)?);
        for i in 0..20u64 {
            let s = 3 + (i as usize % 4);
            configs.push(gen_family(Family::RandomLines(s), seed + 100 + i, field)?);
        }
        for cfg in &configs {
            let rep = classify(cfg, default_tmax(cfg), seed)?;
            if !rep.theorem_consistent {
                ok = false;
                detail = format!(
                    "{}: t={} structure {} verdict {}",
                    cfg.label(),
                    rep.type_report.t,
                    structure_text(&rep.structure),
                    verdict_text(&rep.acm.verdict)
                );
            }
        }
        table.check(
            "classification consistent on families plus 20 random line sets",
            ok,
            detail,
        );
    }

    // alpha-difference sequences for the small point cases
    {
        let col = gen_family(Family::CollinearPoints(4), seed, field)?;
        let diffs = alpha_differences(&col, 4)?;
        table.check(
            "collinear alpha differences all 1",
            diffs == vec![1, 1, 1],
            format!("got {diffs:?}"),
        );
        let single = gen_family(Family::CollinearPoints(1), seed, field)?;
        let diffs = alpha_differences(&single, 3)?;
        table.check(
            "single point alpha differences all 1",
            diffs == vec![1, 1],
            format!("got {diffs:?}"),
        );
    }

    for line in &table.lines {
        println!("{line}");
    }
    let total = table.lines.len();
    let passed = table.lines.iter().filter(|l| l.starts_with("PASS")).count();
    println!("verify: {passed}/{total} checks passed");
    Ok(if table.all_ok { 0 } else { 4 })
}

fn cmd_explore(trials: usize, nlines: usize, seed: u64, out: &PathBuf) -> Result<i32> {
    if trials < 1 {
        return Err(Error::SchemaError("--trials must be at least 1".into()));
    }
    if nlines < 1 {
        return Err(Error::SchemaError("--lines must be at least 1".into()));
    }
    let field = default_field(None)?;
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(out)?;
    let mut t1_count = 0usize;
    let mut acm_fail_count = 0usize;
    let mut interesting = 0usize;
    for i in 0..trials {
        let trial_seed = seed ^ (i as u64);
        let start = Instant::now();
        let cfg = gen_family(Family::RandomLines(nlines), trial_seed, field)?;
        let rep = classify(&cfg, default_tmax(&cfg), trial_seed)?;
        let elapsed_ms = start.elapsed().as_millis() as u64;
        let is_t1 = rep.type_report.t == 1;
        let is_fail = matches!(rep.acm.verdict, AcmVerdict::FailsAt(_));
        if is_t1 {
            t1_count += 1;
        }
        if is_fail {
            acm_fail_count += 1;
        }
        let record = json!({
            "seed": trial_seed,
            "config_json": serialize_config(&cfg),
            "alpha1": rep.type_report.alpha1,
            "alpha2": rep.type_report.alpha2,
            "t": rep.type_report.t,
            "structure": structure_text(&rep.structure),
            "acm_verdict": verdict_text(&rep.acm.verdict),
            "elapsed_ms": elapsed_ms,
        });
        writeln!(file, "{record}")?;
        if is_t1 && is_fail {
            interesting += 1;
            println!(
                "!! INTERESTING trial {i} (seed {trial_seed}): type ({}, {}) with {}",
                rep.type_report.alpha1,
                rep.type_report.alpha2,
                verdict_text(&rep.acm.verdict)
            );
        }
    }
    file.flush()?;
    println!(
        "explore: {trials} trials, {t1_count} with t=1, {acm_fail_count} ACM failures, {interesting} interesting"
    );
    println!("records appended to {}", out.display());
    Ok(0)
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome: Result<i32> = match &cli.command {
        Command::Gen {
            family,
            d,
            n,
            lines,
            seed,
            field,
        } => cmd_gen(family, *d, *n, *lines, *seed, field.as_deref()).map(|()| 0),
        Command::Alpha { config, m } => cmd_alpha(config, *m).map(|()| 0),
        Command::Hilbert { config, m, tmax } => cmd_hilbert(config, *m, *tmax).map(|()| 0),
        Command::Type { config } => cmd_type(config).map(|()| 0),
        Command::Diffs { config, mmax } => cmd_diffs(config, *mmax).map(|()| 0),
        Command::Classify {
            config,
            tmax,
            seed,
        } => cmd_classify(config, *tmax, *seed),
        Command::Verify { dmax, seed } => {
            if *dmax < 3 {
                eprintln!("fatlines: --dmax must be at least 3");
                return 2;
            }
            run_verify(*dmax, *seed)
        }
        Command::Explore {
            trials,
            lines,
            seed,
            out,
        } => cmd_explore(*trials, *lines, *seed, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fatlines: {e}");
            e.exit_code()
        }
    }
}
