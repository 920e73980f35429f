//! Command-line surface for the invariant toolkit.
//!
//! Five subcommands: `analyze` prints the local anatomy of one germ,
//! `invariant` emits its canonical invariant (optionally as JSON),
//! `compare` decides equality of two invariants with a scriptable exit
//! code, `moduli` instantiates a family template over a parameter grid
//! and clusters the members, and `oracle` runs the numeric cross-check.
//!
//! Exit codes are a stable contract: 0 = equal / pass, 1 = distinct /
//! mismatch, 2 = indeterminate (precision cap reached), 3 = any error
//! (parse failure, invalid germ, bad arguments).

use clap::{Parser, Subcommand};
use hpinv_core::algebra::{CoeffValue, GaussianRational};
use hpinv_core::germ::{singular_cone_lines, tangent_cone_lines, GermProfile};
use hpinv_core::invariant::{
    compare, invariant, invariants_equal, DistinctReason, GermInvariant, Verdict,
};
use hpinv_core::oracle::cross_check_with;
use hpinv_core::parser::{format_poly, parse_poly};
use hpinv_core::{Ctx, Error};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hpinv", version, about = "Analytic invariants of plane curve germs")]
struct Cli {
    /// Working precision for certified arithmetic, in bits.
    #[arg(long, global = true, default_value_t = 256)]
    precision_bits: u32,
    /// Hard ceiling for automatic precision escalation.
    #[arg(long, global = true, default_value_t = 4096)]
    precision_cap: u32,
    /// Extra Puiseux truncation slack past the certified exponent.
    #[arg(long, global = true, default_value_t = 1)]
    trunc_guard: u32,
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a germ and print order, cone, shear, and polar arcs.
    Analyze {
        /// Germ expression in x, y over Q(i), e.g. "x^2 - y^3".
        germ: String,
    },
    /// Print the canonical invariant of a germ.
    Invariant { germ: String },
    /// Decide whether two germs have equal invariants.
    Compare { f: String, g: String },
    /// Instantiate a family template over a parameter grid and cluster
    /// the members by invariant.
    Moduli {
        /// Germ expression containing the parameter token `t`.
        template: String,
        /// Comma-separated Gaussian-rational parameters, e.g. "1,-1,1+i".
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Inclusive integer range "lo..hi" used for both the real and
        /// imaginary parts, e.g. "-2..2" for the 25-point square grid.
        #[arg(long, conflicts_with = "grid", allow_hyphen_values = true)]
        grid_square: Option<String>,
    },
    /// Cross-check the symbolic pipeline against the numeric oracle.
    Oracle {
        germ: String,
        /// Largest tracking radius.
        #[arg(long, default_value_t = 1e-2)]
        r_start: f64,
        /// Number of geometric radii (ratio 1/2).
        #[arg(long, default_value_t = 24)]
        steps: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        bits: cli.precision_bits,
        cap: cli.precision_cap,
        guard: cli.trunc_guard,
    };
    let outcome = match &cli.cmd {
        Cmd::Analyze { germ } => cmd_analyze(germ, &ctx, cli.json),
        Cmd::Invariant { germ } => cmd_invariant(germ, &ctx, cli.json),
        Cmd::Compare { f, g } => cmd_compare(f, g, &ctx, cli.json),
        Cmd::Moduli { template, grid, grid_square } => {
            cmd_moduli(template, grid.as_deref(), grid_square.as_deref(), &ctx, cli.json)
        }
        Cmd::Oracle { germ, r_start, steps } => {
            cmd_oracle(germ, *r_start, *steps, &ctx, cli.json)
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

/// Display a coefficient: exact values verbatim, certified values as a
/// midpoint with radius.
fn coeff_text(c: &CoeffValue, ctx: &Ctx) -> String {
    if let Some(q) = c.as_exact() {
        return q.to_display_string();
    }
    match c.enclosure(53, ctx) {
        Ok(ball) => {
            let (re, im) = ball.mid().to_f64_pair();
            format!("({re}{im:+} i) ± {:.2e}", ball.rad().to_f64())
        }
        Err(_) => "<unresolved>".to_string(),
    }
}

fn coeff_json(c: &CoeffValue, ctx: &Ctx) -> Value {
    if let Some(q) = c.as_exact() {
        return json!({ "exact": q.to_display_string() });
    }
    match c.enclosure(53, ctx) {
        Ok(ball) => {
            let (re, im) = ball.mid().to_f64_pair();
            json!({ "mid": [re, im], "rad": ball.rad().to_f64() })
        }
        Err(_) => json!({ "mid": Value::Null, "rad": Value::Null }),
    }
}

/// Render the line `x = a*y` for a cone slope.
fn line_text(slope: &CoeffValue, ctx: &Ctx) -> String {
    if slope.is_provably_zero() {
        return "x=0".to_string();
    }
    let a = coeff_text(slope, ctx);
    if a.contains('+') || a.contains(' ') {
        format!("x=({a})*y")
    } else {
        format!("x={a}*y")
    }
}

fn arc_json(info: &hpinv_core::invariant::PolarArcInfo, ctx: &Ctx) -> Value {
    json!({
        "series": info.arc.series.to_text(),
        "h0": info.data.h0.to_string(),
        "c0": coeff_json(&info.data.c0, ctx),
        "tangential": info.tangential,
    })
}

fn shear_text(prof: &GermProfile) -> String {
    if prof.shear == 0 {
        "none".to_string()
    } else {
        format!("y -> y + {}*x", prof.shear)
    }
}

fn cmd_analyze(germ: &str, ctx: &Ctx, as_json: bool) -> Result<u8, Error> {
    let f = parse_poly(germ)?;
    let gi = invariant(&f, ctx)?;
    let prof = &gi.profile;
    let cone = ctx.with_escalation(|c| tangent_cone_lines(prof, c))?;
    let sing = ctx.with_escalation(|c| singular_cone_lines(prof, c))?;
    if as_json {
        let doc = json!({
            "germ": format_poly(&prof.original),
            "order": prof.order,
            "initial": format_poly(&prof.initial),
            "shear": prof.shear,
            "cone": cone.iter().map(|l| json!({
                "line": line_text(&l.slope, ctx),
                "multiplicity": l.multiplicity,
            })).collect::<Vec<_>>(),
            "singular": sing.iter().map(|l| json!({
                "line": line_text(&l.slope, ctx),
                "multiplicity": l.multiplicity,
            })).collect::<Vec<_>>(),
            "arcs": gi.arcs.iter().map(|a| arc_json(a, ctx)).collect::<Vec<_>>(),
        });
        println!("{doc}");
        return Ok(0);
    }
    println!("germ: {}", format_poly(&prof.original));
    println!("order: {}", prof.order);
    println!("initial form: {}", format_poly(&prof.initial));
    println!("shear: {}", shear_text(prof));
    println!("tangent cone:");
    for l in &cone {
        println!("  {} (multiplicity {})", line_text(&l.slope, ctx), l.multiplicity);
    }
    if sing.is_empty() {
        println!("singular cone lines: none");
    } else {
        println!("singular cone lines:");
        for l in &sing {
            println!("  {} (multiplicity {})", line_text(&l.slope, ctx), l.multiplicity);
        }
    }
    if gi.arcs.is_empty() {
        println!("polar arcs: none");
    } else {
        println!("polar arcs:");
        for a in &gi.arcs {
            println!(
                "  x = {}  |  h0 = {}  |  c0 = {}  |  {}",
                a.arc.series.to_text(),
                a.data.h0,
                coeff_text(&a.data.c0, ctx),
                if a.tangential { "tangential" } else { "transverse" }
            );
        }
    }
    Ok(0)
}

fn invariant_json(gi: &GermInvariant, ctx: &Ctx) -> Value {
    json!({
        "order": gi.profile.order,
        "classes": gi.classes.iter().map(|cl| json!({
            "line": line_text(&cl.line, ctx),
            "terms": cl.canonical.iter().map(|(h, c)| json!({
                "h0": h.to_string(),
                "c0": coeff_json(c, ctx),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "arcs": gi.arcs.iter().map(|a| arc_json(a, ctx)).collect::<Vec<_>>(),
    })
}

fn cmd_invariant(germ: &str, ctx: &Ctx, as_json: bool) -> Result<u8, Error> {
    let f = parse_poly(germ)?;
    let gi = invariant(&f, ctx)?;
    if as_json {
        println!("{}", invariant_json(&gi, ctx));
        return Ok(0);
    }
    println!("order: {}", gi.profile.order);
    if gi.classes.is_empty() {
        println!("invariant: empty (tangent cone is squarefree)");
    } else {
        println!("invariant: {} class(es)", gi.classes.len());
        for cl in &gi.classes {
            let terms: Vec<String> = cl
                .canonical
                .iter()
                .map(|(h, c)| format!("{}*y^{}", coeff_text(c, ctx), h))
                .collect();
            println!("  I({}): {{ {} }}", line_text(&cl.line, ctx), terms.join(", "));
        }
    }
    println!("polar arcs:");
    for a in &gi.arcs {
        println!(
            "  x = {}  |  h0 = {}  |  c0 = {}  |  {}",
            a.arc.series.to_text(),
            a.data.h0,
            coeff_text(&a.data.c0, ctx),
            if a.tangential { "tangential" } else { "transverse" }
        );
    }
    Ok(0)
}

fn cmd_compare(f_src: &str, g_src: &str, ctx: &Ctx, as_json: bool) -> Result<u8, Error> {
    let f = parse_poly(f_src)?;
    let g = parse_poly(g_src)?;
    let verdict = compare(&f, &g, ctx)?;
    let (label, witness, code) = match &verdict {
        Verdict::InvariantsEqual => ("InvariantsEqual", None, 0u8),
        Verdict::Distinct(DistinctReason::MultiplicityMismatch) => {
            ("Distinct", Some("MultiplicityMismatch"), 1)
        }
        Verdict::Distinct(DistinctReason::InvariantMismatch) => {
            ("Distinct", Some("InvariantMismatch"), 1)
        }
        Verdict::Indeterminate => ("Indeterminate", None, 2),
    };
    if as_json {
        println!("{}", json!({ "verdict": label, "witness": witness }));
    } else {
        match witness {
            Some(w) => println!("{label}: {w}"),
            None => println!("{label}"),
        }
    }
    Ok(code)
}

/// Replace every standalone `t` in the template with the parenthesized
/// parameter text (plain textual substitution; the grammar has no other
/// identifier containing `t`, but guard against neighbours anyway).
fn instantiate(template: &str, param: &GaussianRational) -> String {
    let text = format!("({})", param.to_display_string());
    let chars: Vec<char> = template.chars().collect();
    let mut out = String::with_capacity(template.len() + text.len());
    for (idx, &ch) in chars.iter().enumerate() {
        let prev_word = idx > 0 && chars[idx - 1].is_alphanumeric();
        let next_word = idx + 1 < chars.len() && chars[idx + 1].is_alphanumeric();
        if ch == 't' && !prev_word && !next_word {
            out.push_str(&text);
        } else {
            out.push(ch);
        }
    }
    out
}

/// Parse one grid entry: any constant germ expression, e.g. "-1/2+3i".
fn parse_param(src: &str) -> Result<GaussianRational, Error> {
    let p = parse_poly(src)?;
    let constant = p.terms().all(|((i, j), _)| *i == 0 && *j == 0);
    if !constant {
        return Err(Error::Syntax {
            pos: 0,
            msg: format!("grid entry `{src}` is not a constant"),
        });
    }
    Ok(p.coeff(0, 0))
}

fn parse_grid(
    grid: Option<&str>,
    grid_square: Option<&str>,
) -> Result<Vec<GaussianRational>, Error> {
    if let Some(list) = grid {
        return list.split(',').map(|s| parse_param(s.trim())).collect();
    }
    if let Some(range) = grid_square {
        let (lo, hi) = range
            .split_once("..")
            .and_then(|(a, b)| Some((a.trim().parse::<i64>().ok()?, b.trim().parse::<i64>().ok()?)))
            .ok_or_else(|| Error::Syntax {
                pos: 0,
                msg: format!("grid range `{range}` is not of the form lo..hi"),
            })?;
        let mut out = Vec::new();
        for a in lo..=hi {
            for b in lo..=hi {
                out.push(GaussianRational::from_parts(a, 1, b, 1));
            }
        }
        return Ok(out);
    }
    Err(Error::Syntax {
        pos: 0,
        msg: "moduli needs either --grid or --grid-square".to_string(),
    })
}

enum PointOutcome {
    Inv(Box<GermInvariant>),
    Degenerate(String),
    Indeterminate,
}

fn cmd_moduli(
    template: &str,
    grid: Option<&str>,
    grid_square: Option<&str>,
    ctx: &Ctx,
    as_json: bool,
) -> Result<u8, Error> {
    let params = parse_grid(grid, grid_square)?;
    let labels: Vec<String> = params.iter().map(|p| p.to_display_string()).collect();
    let n = params.len();
    // Each point's invariant is computed once, in parallel.
    let points: Vec<PointOutcome> = params
        .par_iter()
        .map(|p| {
            let src = instantiate(template, p);
            match parse_poly(&src).and_then(|f| invariant(&f, ctx)) {
                Ok(gi) => PointOutcome::Inv(Box::new(gi)),
                Err(Error::PrecisionExhausted) | Err(Error::Indeterminate) => {
                    PointOutcome::Indeterminate
                }
                Err(e) => PointOutcome::Degenerate(e.to_string()),
            }
        })
        .collect();
    // Pairwise verdict matrix from the precomputed invariants.
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let cells: Vec<((usize, usize), &'static str)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let cell = match (&points[a], &points[b]) {
                (PointOutcome::Degenerate(_), _) | (_, PointOutcome::Degenerate(_)) => "DEG",
                (PointOutcome::Indeterminate, _) | (_, PointOutcome::Indeterminate) => "IND",
                (PointOutcome::Inv(x), PointOutcome::Inv(y)) => {
                    if x.profile.order != y.profile.order {
                        "NEQ"
                    } else {
                        match ctx.with_escalation(|c| invariants_equal(x, y, c)) {
                            Ok(true) => "EQ",
                            Ok(false) => "NEQ",
                            Err(_) => "IND",
                        }
                    }
                }
            };
            ((a, b), cell)
        })
        .collect();
    let mut matrix = vec![vec![""; n]; n];
    for ((a, b), cell) in &cells {
        matrix[*a][*b] = cell;
        matrix[*b][*a] = cell;
    }
    for (idx, p) in points.iter().enumerate() {
        matrix[idx][idx] = match p {
            PointOutcome::Inv(_) => "EQ",
            PointOutcome::Degenerate(_) => "DEG",
            PointOutcome::Indeterminate => "IND",
        };
    }
    // Clusters: union-find over EQ cells.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for ((a, b), cell) in &cells {
        if *cell == "EQ" {
            let ra = find(&mut parent, *a);
            let rb = find(&mut parent, *b);
            parent[ra] = rb;
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut seen: Vec<Option<usize>> = vec![None; n];
    for idx in 0..n {
        if !matches!(points[idx], PointOutcome::Inv(_)) {
            continue;
        }
        let root = find(&mut parent, idx);
        match seen[root] {
            Some(slot) => clusters[slot].push(idx),
            None => {
                seen[root] = Some(clusters.len());
                clusters.push(vec![idx]);
            }
        }
    }
    let degenerate: Vec<usize> = (0..n)
        .filter(|&i| matches!(points[i], PointOutcome::Degenerate(_)))
        .collect();
    let indeterminate: Vec<usize> = (0..n)
        .filter(|&i| matches!(points[i], PointOutcome::Indeterminate))
        .collect();

    if as_json {
        let doc = json!({
            "points": labels,
            "clusters": clusters.iter()
                .map(|cl| cl.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "degenerate": degenerate.iter().map(|&i| {
                let reason = match &points[i] {
                    PointOutcome::Degenerate(msg) => msg.as_str(),
                    _ => "",
                };
                json!({ "t": labels[i], "reason": reason })
            }).collect::<Vec<_>>(),
            "indeterminate": indeterminate.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
            "matrix": matrix.iter()
                .map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        });
        println!("{doc}");
        return Ok(0);
    }
    println!(
        "grid: {n} point(s), {} degenerate, {} indeterminate",
        degenerate.len(),
        indeterminate.len()
    );
    if !degenerate.is_empty() {
        println!("degenerate:");
        for &i in &degenerate {
            let reason = match &points[i] {
                PointOutcome::Degenerate(msg) => msg.as_str(),
                _ => "",
            };
            println!("  t = {}: {}", labels[i], reason);
        }
    }
    println!("clusters ({}):", clusters.len());
    for cl in &clusters {
        let names: Vec<&str> = cl.iter().map(|&i| labels[i].as_str()).collect();
        println!("  {{ {} }}", names.join(", "));
    }
    println!();
    // CSV verdict matrix.
    println!("t,{}", labels.join(","));
    for (idx, row) in matrix.iter().enumerate() {
        println!("{},{}", labels[idx], row.join(","));
    }
    Ok(0)
}

fn cmd_oracle(
    germ: &str,
    r_start: f64,
    steps: usize,
    ctx: &Ctx,
    as_json: bool,
) -> Result<u8, Error> {
    let f = parse_poly(germ)?;
    let report = cross_check_with(&f, ctx, r_start, steps)?;
    if as_json {
        let doc = json!({
            "pass": report.pass,
            "r_start": report.r_start,
            "rows": report.rows.iter().map(|r| json!({
                "arc": r.arc,
                "h0_sym": r.h0_sym,
                "h0_est": r.h0_est,
                "c0_mod_sym": r.c0_mod_sym,
                "c0_mod_est": r.c0_mod_est,
                "pass": r.pass,
            })).collect::<Vec<_>>(),
            "notes": report.notes,
        });
        println!("{doc}");
    } else {
        println!(
            "oracle: {} (r_start = {:e}, {} arc(s))",
            if report.pass { "pass" } else { "mismatch" },
            report.r_start,
            report.rows.len()
        );
        for r in &report.rows {
            println!(
                "  x = {}  |  h0 {:.6} vs {:.6}  |  |c0| {:.6} vs {:.6}  |  {}",
                r.arc,
                r.h0_sym,
                r.h0_est,
                r.c0_mod_sym,
                r.c0_mod_est,
                if r.pass { "ok" } else { "off" }
            );
        }
        for note in &report.notes {
            println!("  note: {note}");
        }
    }
    Ok(if report.pass { 0 } else { 1 })
}
