use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;

use poincare_core::algebra::rat::{self, Rat};
use poincare_core::algebra::RatSeries;
use poincare_core::branch::{characteristic_sequence, p_ar, p_geom, puiseux_from_poles, puiseux_poles, BranchSpec};
use poincare_core::counter::{
    count_branch_geometric, count_branch_image, count_branch_orbit, count_liftable, igusa_monomial, measure_ord_locus,
    CountReport, CountRow, IntPoly, Method,
};
use poincare_core::presburger::{
    eliminate_quantifiers, membership, parse_linear, parse_presburger, parse_presburger_with_vars, to_iterated_ranges,
    weighted_sum, PresburgerFormula,
};
use poincare_core::verifier::{run_plan, Summary, Verdict, VerificationPlan};

use crate::config::{resolve, Config, FileConfig, Flags, Format};
use crate::{Cli, Command, CountArgs, CountMethod, PresburgerOp};

pub fn run(cli: Cli) -> Result<u8> {
    let file = FileConfig::load(cli.config.as_deref())?;
    let mut flags = Flags { format: cli.format, threads: cli.threads, ..Default::default() };
    let default_format = match &cli.cmd {
        Command::Count(_) => Format::Csv,
        Command::Verify { .. } => Format::Json,
        _ => Format::Text,
    };
    match &cli.cmd {
        Command::Count(a) => {
            flags.n_max = a.n_max;
            flags.budget = a.budget;
            flags.depth = a.depth;
            flags.window = if a.window {
                Some(true)
            } else if a.no_window {
                Some(false)
            } else {
                None
            };
            flags.primes = a.p.map(|p| vec![p]);
        }
        Command::Igusa { primes, n_max, .. } => {
            flags.n_max = *n_max;
            flags.primes = (!primes.is_empty()).then(|| primes.clone());
        }
        _ => {}
    }
    let env = std::env::var("THREADS").ok();
    let cfg = resolve(&flags, &file, env.as_deref(), default_format)?;
    rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global().ok();

    let (output, code) = match &cli.cmd {
        Command::Branch { branch, normalize } => (cmd_branch(&cfg, branch, *normalize)?, 0),
        Command::Count(a) => (cmd_count(&cfg, a)?, 0),
        Command::Presburger { op } => (cmd_presburger(&cfg, op)?, 0),
        Command::Igusa { k, .. } => (cmd_igusa(&cfg, k)?, 0),
        Command::Verify { plan } => cmd_verify(&cfg, plan)?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, output).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{output}"),
    }
    Ok(code)
}

fn read_branch(arg: &str) -> Result<BranchSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading branch {arg}"))?
    };
    Ok(BranchSpec::from_json(&text)?)
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?)
}

fn latex_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = format!("\\begin{{tabular}}{{{}}}\n", "r".repeat(header.len()));
    s += &format!("{} \\\\\n\\hline\n", header.join(" & "));
    for r in rows {
        s += &format!("{} \\\\\n", r.join(" & "));
    }
    s + "\\end{tabular}\n"
}

fn cmd_branch(cfg: &Config, arg: &str, normalize: bool) -> Result<String> {
    let b = read_branch(arg)?;
    let c = characteristic_sequence(&b)?;
    let (mut geom, mut ar) = (p_geom(&c), p_ar(&c));
    if normalize {
        geom = geom.normalize();
        ar = ar.normalize();
    }
    let poles = ar.poles_in_l();
    let inner: BTreeSet<Rat> = puiseux_poles(&poles);
    let recovered = puiseux_from_poles(c.m(), inner.iter())?;
    let pole_text: Vec<String> = poles.iter().map(rat::to_string).collect();
    Ok(match cfg.format {
        Format::Json => {
            let v = json!({
                "charseq": c,
                "p_geom": geom,
                "p_ar": ar,
                "p_geom_text": geom.to_text(),
                "p_ar_text": ar.to_text(),
                "poles": pole_text,
                "puiseux": recovered,
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Text => format!(
            "{}\nP_geom: {}\nP_ar: {}\npoles: [{}]\nrecovered beta: [{}; {}]\n",
            c.to_text(),
            geom.to_text(),
            ar.to_text(),
            pole_text.join(", "),
            c.m(),
            recovered.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
        ),
        Format::Latex => format!(
            "P_{{\\mathrm{{geom}}}}(T) = {}\\\\\nP_{{\\mathrm{{ar}}}}(T) = {}\n",
            geom.to_latex(),
            ar.to_latex()
        ),
        Format::Csv => csv_string(
            &["key", "value"],
            vec![
                vec!["beta".into(), format!("{:?}", c.beta)],
                vec!["e".into(), format!("{:?}", c.e)],
                vec!["N".into(), format!("{:?}", c.big_n)],
                vec!["p_geom".into(), geom.to_text()],
                vec!["p_ar".into(), ar.to_text()],
                vec!["poles".into(), pole_text.join(" ")],
                vec!["puiseux".into(), format!("{recovered:?}")],
            ],
        )?,
    })
}

fn prime_of(cfg: &Config) -> Result<u64> {
    match cfg.primes.as_slice() {
        [p] => Ok(*p),
        [] => bail!("a prime is required (-p)"),
        _ => bail!("count takes a single prime"),
    }
}

fn cmd_count(cfg: &Config, a: &CountArgs) -> Result<String> {
    let p = prime_of(cfg)?;
    let mut report;
    if let Some(arg) = &a.branch {
        let b = read_branch(arg)?;
        let method = a.method.unwrap_or(if cfg.window { CountMethod::Window } else { CountMethod::Exhaustive });
        report = CountReport::new(format!("branch {}", b.to_json()), p, a.degree);
        if method == CountMethod::Geometric {
            report
                .assumptions
                .push("heuristic: F_p-rational points over the algebraic closure, via the stratum window".into());
        }
        for n in 0..=cfg.n_max {
            let t = Instant::now();
            let (count, m) = match method {
                CountMethod::Exhaustive => {
                    (count_branch_image(&b, p, a.degree, n, false, cfg.budget)?, Method::Exhaustive)
                }
                CountMethod::Window => {
                    (count_branch_image(&b, p, a.degree, n, true, cfg.budget)?, Method::TruncatedWindow)
                }
                CountMethod::Orbit => (count_branch_orbit(&b, p, a.degree, n)?, Method::OrbitStabilizer),
                CountMethod::Geometric => (count_branch_geometric(&b, p, n, cfg.budget)?, Method::RationalFiber),
            };
            report.rows.push(CountRow {
                n,
                count: count.count.to_string(),
                method: m,
                seconds: t.elapsed().as_secs_f64(),
            });
        }
    } else if !a.poly.is_empty() {
        let f = IntPoly::parse_system(&a.poly)?;
        let nvars = a.nvars.unwrap_or_else(|| f.iter().map(IntPoly::nvars).max().unwrap_or(1)).max(1);
        let origin: Vec<IntPoly> =
            if a.origin { (0..nvars).map(|i| IntPoly::var(i, nvars)).collect() } else { Vec::new() };
        report = CountReport::new(a.poly.join(", "), p, 1);
        report.assumptions.push(match cfg.depth {
            Some(d) => format!("lifting depth {d}"),
            None => "lifting depth 2n+2".into(),
        });
        if a.origin {
            report.assumptions.push("residues above the origin".into());
        }
        for n in 0..=cfg.n_max {
            let t = Instant::now();
            let depth = cfg.depth.unwrap_or(2 * n + 2);
            let c = count_liftable(&f, &origin, nvars, p, n, depth, cfg.budget)?;
            let method = if c.certified { Method::HenselCertified } else { Method::StabilizedUncertified };
            report.rows.push(CountRow { n, count: c.count, method, seconds: t.elapsed().as_secs_f64() });
        }
    } else {
        bail!("count needs --branch or --poly");
    }
    if a.no_timing {
        report = report.without_timing();
    }
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| vec![r.n.to_string(), r.count.clone(), r.method.as_str().to_string(), format!("{:.6}", r.seconds)])
        .collect();
    let header = ["n", "count", "method", "seconds"];
    Ok(match cfg.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => csv_string(&header, rows)?,
        Format::Latex => latex_table(&header, &rows),
        Format::Text => {
            let mut s = format!("series: {}\np: {}, d: {}\n", report.series, report.p, report.d);
            for a in &report.assumptions {
                s += &format!("assumption: {a}\n");
            }
            for r in rows {
                s += &format!("{}\n", r.join("\t"));
            }
            s
        }
    })
}

fn quantifier_free(text: &str, vars: &[String]) -> Result<PresburgerFormula> {
    let f = if vars.is_empty() {
        parse_presburger(text)?
    } else {
        let v: Vec<&str> = vars.iter().map(String::as_str).collect();
        parse_presburger_with_vars(text, &v)?
    };
    Ok(if f.is_quantifier_free() { f } else { eliminate_quantifiers(&f) })
}

fn series_output(cfg: &Config, s: &RatSeries) -> Result<String> {
    Ok(match cfg.format {
        Format::Json => serde_json::to_string_pretty(&json!({ "series": s, "text": s.to_text() }))? + "\n",
        Format::Latex => s.to_latex() + "\n",
        Format::Text | Format::Csv => s.to_text() + "\n",
    })
}

fn cmd_presburger(cfg: &Config, op: &PresburgerOp) -> Result<String> {
    match op {
        PresburgerOp::Qe { formula } => {
            let g = eliminate_quantifiers(&parse_presburger(formula)?);
            Ok(match cfg.format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({ "free": g.free, "formula": g.to_string() }))? + "\n"
                }
                _ => format!("{g}\n"),
            })
        }
        PresburgerOp::Sum { set, tweight, lweight, order } => {
            let f = quantifier_free(set, order)?;
            let vars: Vec<&str> = f.free.iter().map(String::as_str).collect();
            let sys = to_iterated_ranges(&f, &vars)?;
            let s = weighted_sum(&sys, &parse_linear(lweight)?, &parse_linear(tweight)?)?.normalize();
            series_output(cfg, &s)
        }
        PresburgerOp::Check { formula, point, vars } => {
            let f = quantifier_free(formula, vars)?;
            let inside = membership(&f, point)?;
            Ok(match cfg.format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({ "free": f.free, "point": point, "member": inside }))? + "\n"
                }
                _ => format!("{inside}\n"),
            })
        }
    }
}

fn cmd_igusa(cfg: &Config, k: &[u32]) -> Result<String> {
    if k.contains(&0) {
        bail!("exponents must be positive");
    }
    let s = igusa_monomial(k);
    if cfg.primes.is_empty() {
        return series_output(cfg, &s);
    }
    let mut rows = Vec::new();
    for &p in &cfg.primes {
        let coeffs = s.specialize(&rat::int(p as i64))?.expand(cfg.n_max as usize);
        for n in 0..=cfg.n_max {
            let vol = measure_ord_locus(k, p, n);
            let c = &coeffs[n as usize];
            rows.push(vec![
                p.to_string(),
                n.to_string(),
                rat::to_string(c),
                rat::to_string(&vol),
                (*c == vol).to_string(),
            ]);
        }
    }
    let header = ["p", "n", "coefficient", "volume", "equal"];
    Ok(match cfg.format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|r| json!({ "p": r[0], "n": r[1], "coefficient": r[2], "volume": r[3], "equal": r[4] == "true" }))
                .collect();
            serde_json::to_string_pretty(&json!({ "series": s, "text": s.to_text(), "rows": items }))? + "\n"
        }
        Format::Csv => csv_string(&header, rows)?,
        Format::Latex => format!("{}\n{}", s.to_latex(), latex_table(&header, &rows)),
        Format::Text => {
            let mut out = format!("{}\n", s.to_text());
            for r in rows {
                out += &format!("{}\n", r.join("\t"));
            }
            out
        }
    })
}

fn verdict_text(v: &Verdict) -> String {
    let mut s = format!("summary: {:?}\n", v.summary).to_lowercase();
    for e in &v.excluded {
        s += &format!("excluded p={}: {}\n", e.p, e.reason);
    }
    for r in &v.rows {
        s += &format!(
            "p={} n={} symbolic={} counted={} equal={} certified={}\n",
            r.p, r.n, r.symbolic, r.counted, r.equal, r.certified
        );
    }
    for c in &v.checks {
        s += &format!("check {} p={}: {} ({})\n", c.name, c.p, if c.passed { "ok" } else { "failed" }, c.detail);
    }
    if let Some(m) = &v.first_mismatch {
        s += &format!("first mismatch: p={} n={} symbolic={} counted={}\n", m.p, m.n, m.symbolic, m.counted);
    }
    s
}

fn cmd_verify(cfg: &Config, path: &Path) -> Result<(String, u8)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading plan {}", path.display()))?;
    let plan = VerificationPlan::from_json(&text)?;
    let v = run_plan(&plan)?;
    let out = match cfg.format {
        Format::Json => v.to_json() + "\n",
        Format::Text => verdict_text(&v),
        Format::Csv => csv_string(
            &["p", "n", "symbolic", "counted", "equal", "certified", "method"],
            v.rows
                .iter()
                .map(|r| {
                    vec![
                        r.p.to_string(),
                        r.n.to_string(),
                        r.symbolic.clone(),
                        r.counted.clone(),
                        r.equal.to_string(),
                        r.certified.to_string(),
                        r.method.as_str().to_string(),
                    ]
                })
                .collect(),
        )?,
        Format::Latex => latex_table(
            &["p", "n", "symbolic", "counted"],
            &v.rows
                .iter()
                .map(|r| vec![r.p.to_string(), r.n.to_string(), r.symbolic.clone(), r.counted.clone()])
                .collect::<Vec<_>>(),
        ),
    };
    let code = match v.summary {
        Summary::Pass => 0,
        Summary::Fail => 2,
        Summary::Uncertified => 3,
    };
    Ok((out, code))
}
