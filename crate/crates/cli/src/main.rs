//! Command-line front end: exact torsion invariants of knot exteriors,
//! surgered manifolds and Seifert manifolds, plus the obstruction
//! search. Output is deterministic JSON; reruns are byte-identical.

mod encode;
mod inputs;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use rtorsion::error::{Error, Result};
use rtorsion::groups::Perm;
use rtorsion::knot::{knot_invariant_set, knot_surjections, peripheral_class};
use rtorsion::seifert::{
    enumerate_characters, homology_order, obstruct, seifert_invariant_set, ObstructBounds,
    ObstructGroup, SeifertCharacter, SeifertParams,
};
use rtorsion::surgery::{
    abelianization, slope, surgered_presentation, surgery_invariant_set, CharacterBeta,
};

#[derive(Parser)]
#[command(name = "rtorsion", version, about = "Exact Reidemeister torsion of knot \
surgeries and Seifert manifolds twisted through finite groups")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Report per-class progress on stderr.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// Twisted torsion of a knot exterior, grouped by peripheral class.
    Torsion {
        #[arg(long)]
        knot: String,
        #[arg(long, default_value = "trivial")]
        group: String,
        #[arg(long, default_value = "trivial-1")]
        rep: String,
    },
    /// Conjugacy classes of surjections of the knot group onto G.
    Homs {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        group: String,
        /// Keep only classes satisfying the p/q filling relation.
        #[arg(long)]
        slope: Option<String>,
    },
    /// Torsion set of the p/q-surgered manifold by the surgery formula.
    Surgery {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        slope: String,
        #[arg(long)]
        group: String,
        #[arg(long)]
        rep: String,
    },
    /// Torsion set of a Seifert manifold over S^2 by the closed form.
    Seifert {
        /// Exceptional fibers, e.g. `3/2,-3,-5`.
        #[arg(long)]
        params: String,
        #[arg(long)]
        group: String,
        #[arg(long)]
        rep: String,
        /// Character exponents `a,b1,..,bm`; default: every character.
        #[arg(long = "char")]
        character: Option<String>,
    },
    /// Search all Seifert candidates within bounds and compare them
    /// against the surgered knot exterior.
    Obstruct {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        slope: String,
        /// Comma-separated group names or files, e.g. `A4,A5`.
        #[arg(long, value_delimiter = ',')]
        groups: Vec<String>,
        /// Largest fiber multiplicity searched (p_i <= bounds).
        #[arg(long, default_value_t = 16)]
        bounds: i64,
    },
    /// Write the bundled input files to a directory.
    Fixtures {
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's default exit code does not match our contract
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let json = cli.json.clone();
    match run(cli) {
        Ok(out) => {
            let text = format!("{}\n", serde_json::to_string_pretty(&out).unwrap());
            match json {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Invalid(_) | Error::BadDeficiency => 1,
        Error::Hypothesis(_) => 2,
        _ => 3,
    }
}

fn run(cli: Cli) -> Result<Value> {
    match cli.verb {
        Verb::Torsion { knot, group, rep } => run_torsion(&knot, &group, &rep, cli.verbose),
        Verb::Homs { knot, group, slope } => run_homs(&knot, &group, slope.as_deref()),
        Verb::Surgery { knot, slope, group, rep } => {
            run_surgery(&knot, &slope, &group, &rep)
        }
        Verb::Seifert { params, group, rep, character } => {
            run_seifert(&params, &group, &rep, character.as_deref())
        }
        Verb::Obstruct { knot, slope, groups, bounds } => {
            run_obstruct(&knot, &slope, &groups, bounds, cli.verbose)
        }
        Verb::Fixtures { dir } => run_fixtures(&dir),
    }
}

fn run_torsion(knot: &str, group: &str, rep: &str, verbose: bool) -> Result<Value> {
    let (kname, p) = inputs::load_knot(knot)?;
    let (gname, g) = inputs::load_group(group)?;
    let phi = inputs::resolve_rep(rep, &g)?;
    let mut peripherals: Vec<Vec<Perm>> = vec![];
    for h in knot_surjections(&p, &g) {
        let c = peripheral_class(&p, &h, &g);
        if !peripherals.contains(&c) {
            peripherals.push(c);
        }
    }
    peripherals.sort();
    let mut classes = vec![];
    for c in peripherals {
        if verbose {
            eprintln!("peripheral class [{}, {}]", c[0], c[1]);
        }
        let set = knot_invariant_set(&p, &g, &phi, &[c[0].clone(), c[1].clone()])?;
        classes.push(json!({
            "peripheral": encode::perm_tuple(&c),
            "values": set.iter().map(encode::torsion_value).collect::<Vec<_>>(),
        }));
    }
    Ok(json!({
        "verb": "torsion",
        "knot": kname,
        "group": gname,
        "rep": rep,
        "classes": classes,
    }))
}

fn run_homs(knot: &str, group: &str, slope_arg: Option<&str>) -> Result<Value> {
    let (kname, p) = inputs::load_knot(knot)?;
    let (gname, g) = inputs::load_group(group)?;
    let sl = match slope_arg {
        Some(s) => {
            let (sp, sq) = inputs::parse_slope(s)?;
            Some(slope(sp, sq)?)
        }
        None => None,
    };
    let mut classes = vec![];
    let mut count = 0usize;
    for h in knot_surjections(&p, &g) {
        let c = peripheral_class(&p, &h, &g);
        let fills = match &sl {
            Some(sl) => {
                let lam = h.eval(&p.longitude, g.degree());
                let mu = h.images[p.meridian].clone();
                lam.pow(sl.q).mul(&mu.pow(sl.p)).is_identity()
            }
            None => true,
        };
        if fills {
            count += 1;
        }
        classes.push(json!({
            "images": encode::perm_tuple(&h.images),
            "peripheral": encode::perm_tuple(&c),
            "fills": fills,
        }));
    }
    let mut out = json!({
        "verb": "homs",
        "knot": kname,
        "group": gname,
        "count": count,
        "classes": classes,
    });
    if let Some(s) = slope_arg {
        out["slope"] = Value::String(s.to_string());
    }
    Ok(out)
}

fn run_surgery(knot: &str, slope_arg: &str, group: &str, rep: &str) -> Result<Value> {
    let (kname, p) = inputs::load_knot(knot)?;
    let (gname, g) = inputs::load_group(group)?;
    let phi = inputs::resolve_rep(rep, &g)?;
    let (sp, sq) = inputs::parse_slope(slope_arg)?;
    let sl = slope(sp, sq)?;
    let order = cyclic_homology_order(&abelianization(&surgered_presentation(&p, &sl)))?;
    let set = surgery_invariant_set(&p, &sl, &g, &phi, &CharacterBeta { order })?;
    let mut out = json!({
        "verb": "surgery",
        "knot": kname,
        "slope": slope_arg,
        "group": gname,
        "rep": rep,
        "order": order,
    });
    merge(&mut out, encode::invariant_set(&set));
    Ok(out)
}

fn run_seifert(
    params_arg: &str,
    group: &str,
    rep: &str,
    character: Option<&str>,
) -> Result<Value> {
    let params = SeifertParams::new(&inputs::parse_params(params_arg)?)?;
    let (gname, g) = inputs::load_group(group)?;
    let phi = inputs::resolve_rep(rep, &g)?;
    let order = homology_order(&params);
    if order <= 0 {
        return Err(Error::Hypothesis("first homology is infinite".into()));
    }
    let all = enumerate_characters(&params, order as u32)?;
    let chars: Vec<SeifertCharacter> = match character {
        Some(s) => {
            let exps = inputs::parse_exponents(s)?;
            let found = all.iter().find(|c| {
                let mut t = vec![c.a];
                t.extend(&c.b);
                t == exps
            });
            vec![found
                .ok_or_else(|| {
                    Error::Parse(format!("{s} is not a surjective character of order {order}"))
                })?
                .clone()]
        }
        None => all,
    };
    let mut out_chars = vec![];
    for chi in &chars {
        let set = seifert_invariant_set(&params, &g, &phi, chi)?;
        let mut entry = json!({ "a": chi.a, "b": chi.b });
        merge(&mut entry, encode::invariant_set(&set));
        out_chars.push(entry);
    }
    Ok(json!({
        "verb": "seifert",
        "params": params.fractions(),
        "group": gname,
        "rep": rep,
        "order": order,
        "characters": out_chars,
    }))
}

fn run_obstruct(
    knot: &str,
    slope_arg: &str,
    groups: &[String],
    bounds: i64,
    verbose: bool,
) -> Result<Value> {
    let (kname, p) = inputs::load_knot(knot)?;
    let (sp, sq) = inputs::parse_slope(slope_arg)?;
    let sl = slope(sp, sq)?;
    let mut setups = vec![];
    for spec in groups {
        let (name, g) = inputs::load_group(spec)?;
        let rep = inputs::builtin_rep(&g);
        setups.push(ObstructGroup { name, group: g, rep });
    }
    let report = obstruct(&p, &sl, &setups, &ObstructBounds { max_p: bounds })?;
    let mut candidates = vec![];
    for c in &report.candidates {
        if verbose {
            eprintln!(
                "candidate {:?}: {}",
                c.fractions,
                c.incompatible.as_deref().unwrap_or("compatible so far")
            );
        }
        candidates.push(json!({
            "params": c.fractions,
            "verdict": if c.incompatible.is_some() { "INCOMPATIBLE" } else { "COMPATIBLE-SO-FAR" },
            "witness": c.incompatible,
            "notes": c.notes,
        }));
    }
    let counts: BTreeMap<&str, usize> =
        report.knot_counts.iter().map(|(n, c)| (n.as_str(), *c)).collect();
    let values: BTreeMap<&str, Vec<Value>> = report
        .knot_values
        .iter()
        .map(|(n, vs)| (n.as_str(), vs.iter().map(encode::torsion_value).collect()))
        .collect();
    Ok(json!({
        "verb": "obstruct",
        "knot": kname,
        "slope": slope_arg,
        "groups": groups,
        "bounds": { "max_p": bounds },
        "order": report.order,
        "knot_counts": counts,
        "knot_values": values,
        "searched": report.searched,
        "candidates": candidates,
        "verdict": if report.all_incompatible() { "INCOMPATIBLE" } else { "COMPATIBLE-SO-FAR" },
    }))
}

fn run_fixtures(dir: &std::path::Path) -> Result<Value> {
    fs::create_dir_all(dir).map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?;
    let mut written = vec![];
    for (name, content) in inputs::FIXTURES {
        let path = dir.join(name);
        fs::write(&path, content)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        written.push(path.display().to_string());
    }
    Ok(json!({ "verb": "fixtures", "written": written }))
}

fn cyclic_homology_order(ab: &(Vec<num_bigint::BigInt>, usize)) -> Result<u32> {
    let (factors, rank) = ab;
    if *rank != 0 || factors.len() != 1 {
        return Err(Error::Hypothesis(format!(
            "first homology is not finite cyclic (factors {factors:?}, rank {rank})"
        )));
    }
    num_traits::ToPrimitive::to_u32(&factors[0])
        .ok_or_else(|| Error::Invalid("homology order out of range".into()))
}

/// Append the fields of `extra` (an object) to `out`.
fn merge(out: &mut Value, extra: Value) {
    let (Value::Object(out), Value::Object(extra)) = (out, extra) else {
        unreachable!("merge expects objects")
    };
    for (k, v) in extra {
        out.insert(k, v);
    }
}
