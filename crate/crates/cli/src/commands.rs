use std::fs;
use std::path::{Path, PathBuf};

use jetlink::front::{default_maslov, Dir, maslov, FrontError, FrontFile, MaslovAssignment, OrientedFront};
use jetlink::polyring::LaurentPoly;
use jetlink::rulings::{ruling_count_report, ruling_polynomial, RulingError};
use jetlink::skein::{check_bound, check_main, homfly_h, homfly_p, specialize_hat, SkeinElement, SkeinError};
use jetlink::symfun::{turaev_inner, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
    /// The command ran but a check failed; the payload is still reported.
    #[error("check failed")]
    CheckFailed(Value),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::CheckFailed(_) => 4,
            CliError::Internal(_) => 5,
        }
    }
}

impl From<SkeinError> for CliError {
    fn from(e: SkeinError) -> Self {
        match e {
            SkeinError::Ruling(r) => r.into(),
            e => CliError::Internal(e.to_string()),
        }
    }
}

impl From<RulingError> for CliError {
    fn from(e: RulingError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

pub struct Loaded {
    pub text: String,
    pub file: FrontFile,
    pub front: OrientedFront,
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let parsed = FrontFile::parse(&text).and_then(|file| file.oriented().map(|front| (file, front)));
    let (file, front) = parsed.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(Loaded { text, file, front })
}

pub fn invariants(f: &OrientedFront) -> Value {
    let inv = f.classical_invariants();
    let pot = default_maslov(f);
    let components: Vec<Value> = f
        .word()
        .components()
        .iter()
        .zip(f.component_orientation())
        .enumerate()
        .map(|(i, (c, d))| {
            let (slice, pos) = c.base();
            json!({
                "component": i + 1,
                "orientation": if d == Dir::Right { "+" } else { "-" },
                "base": [slice, pos + 1],
                "winding": c.winding(),
                "rotation": inv.component_rotation[i],
                "maslov_modulus": pot.modulus[i],
            })
        })
        .collect();
    json!({
        "writhe": inv.writhe,
        "tb": inv.tb,
        "r": inv.rotation,
        "cusps": inv.cusps,
        "right_cusps": inv.right_cusps,
        "down_cusps": inv.down_cusps,
        "up_cusps": inv.up_cusps,
        "crossings": f.word().crossing_count(),
        "word_area": f.word().word_area(),
        "components": components,
    })
}

/// Base potentials: file `maslov` lines, then `--potential` overrides, on
/// top of the direction-parity default.
pub fn potential(loaded: &Loaded, overrides: &[(usize, i64)]) -> Result<MaslovAssignment, CliError> {
    let f = &loaded.front;
    let comps = f.word().components();
    let dirs = f.slice_dirs();
    let mut base: Vec<i64> = comps
        .iter()
        .map(|c| {
            let (s, k) = c.base();
            dirs[s][k].parity()
        })
        .collect();
    for (&c, &v) in loaded.file.maslov.iter().chain(overrides.iter().map(|(c, v)| (c, v))) {
        let slot = c
            .checked_sub(1)
            .and_then(|i| base.get_mut(i))
            .ok_or_else(|| CliError::Input(FrontError::UnknownComponent { component: c, what: "potential target" }.to_string()))?;
        *slot = v;
    }
    maslov(f, &base).map_err(|e| CliError::Input(e.to_string()))
}

pub fn rulings(loaded: &Loaded, p: u32, overrides: &[(usize, i64)]) -> Result<Value, CliError> {
    let f = &loaded.front;
    let pot = potential(loaded, overrides)?;
    let (poly, hist) = match ruling_polynomial(f, p, &pot) {
        Ok(poly) => (poly, ruling_count_report(f, p, &pot)?),
        // a slice with an odd number of strands admits no ruling at all
        Err(RulingError::OddStrandCount { .. }) => (LaurentPoly::zero(), Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let base: Vec<i64> = f
        .word()
        .components()
        .iter()
        .map(|c| {
            let (s, k) = c.base();
            pot.values[s][k]
        })
        .collect();
    let histogram: Vec<Value> = hist.iter().map(|(j, n)| json!({ "switches": j, "count": n })).collect();
    Ok(json!({
        "p": p,
        "potentials": base,
        "polynomial": poly.to_string(),
        "histogram": histogram,
    }))
}

fn element_json(e: &SkeinElement) -> Value {
    Value::Array(
        e.terms()
            .map(|(m, c)| json!({ "lambda": m.pos.to_string(), "mu": m.neg.to_string(), "coeff": c.to_string() }))
            .collect(),
    )
}

pub fn homfly(f: &OrientedFront) -> Result<Value, CliError> {
    let h = homfly_h(f)?;
    let p = homfly_p(f)?;
    let inv = f.classical_invariants();
    let main = check_main(f)?;
    let bound = check_bound(f)?;
    Ok(json!({
        "H": element_json(&h),
        "P": element_json(&p),
        "P_hat": specialize_hat(&p).to_string(),
        "tb": inv.tb,
        "r": inv.rotation,
        "checks": { "mainT": main.equal, "bound": bound.holds },
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Main,
    Bound,
    Both,
}

/// Runs the selected checks; the bool is false if any failed.
pub fn check(f: &OrientedFront, which: Which) -> Result<(Value, bool), CliError> {
    let mut out = serde_json::Map::new();
    let mut ok = true;
    if which != Which::Bound {
        let r = check_main(f)?;
        ok &= r.equal;
        out.insert("mainT".into(), json!({ "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "equal": r.equal }));
    }
    if which != Which::Main {
        let r = check_bound(f)?;
        ok &= r.holds;
        out.insert(
            "bound".into(),
            json!({ "tb_plus_absr": r.tb_plus_abs_r, "neg_adeg": r.neg_adeg, "holds": r.holds }),
        );
    }
    Ok((Value::Object(out), ok))
}

pub fn inner(lambda: &str, mu: &str) -> Result<Value, CliError> {
    let parse = |s: &str| s.parse::<Partition>().map_err(|e| CliError::Input(format!("{s:?}: {e}")));
    let (l, m) = (parse(lambda)?, parse(mu)?);
    Ok(json!({ "lambda": l.to_string(), "mu": m.to_string(), "inner": turaev_inner(&l, &m).to_string() }))
}

fn r2(f: &OrientedFront) -> Result<LaurentPoly, CliError> {
    match ruling_polynomial(f, 2, &default_maslov(f)) {
        Ok(r) => Ok(r),
        Err(RulingError::OddStrandCount { .. }) => Ok(LaurentPoly::zero()),
        Err(e) => Err(e.into()),
    }
}

/// Random move sequences from `f`; returns the first invariant that changed.
fn walk(f: &OrientedFront, walks: usize, rng: &mut ChaCha8Rng) -> Result<Option<String>, CliError> {
    let inv0 = f.classical_invariants();
    let r0 = r2(f)?;
    let p0 = homfly_p(f)?;
    let area_cap = f.word().word_area().max(8) + 8;
    for _ in 0..walks {
        let mut cur = f.clone();
        for _ in 0..rng.gen_range(1..=4) {
            let moves = cur.available_moves(cur.word().word_area() < area_cap);
            let mv = moves[rng.gen_range(0..moves.len())];
            cur = cur.apply_move(mv).map_err(|e| CliError::Internal(e.to_string()))?;
            let inv = cur.classical_invariants();
            let changed = if inv.tb != inv0.tb || inv.rotation != inv0.rotation {
                Some("tb/r")
            } else if r2(&cur)? != r0 {
                Some("R2")
            } else if homfly_p(&cur)? != p0 {
                Some("P")
            } else {
                None
            };
            if let Some(what) = changed {
                return Ok(Some(format!("{what} changed after {mv:?} (now {})", cur.word())));
            }
        }
    }
    Ok(None)
}

fn corpus_entry(path: &Path, walks: usize, rng: &mut ChaCha8Rng) -> Result<(Value, bool), CliError> {
    let loaded = load(path)?;
    let f = &loaded.front;
    let inv = f.classical_invariants();
    let main = check_main(f)?;
    let bound = check_bound(f)?;
    let mut entry = json!({
        "tb": inv.tb,
        "r": inv.rotation,
        "word_area": f.word().word_area(),
        "R2": main.lhs.to_string(),
        "mainT": main.equal,
        "bound": bound.holds,
    });
    let mut problems = Vec::new();
    if !main.equal {
        problems.push(format!("mainT: R2 = {} but coefficient = {}", main.lhs, main.rhs));
    }
    if !bound.holds {
        problems.push("bound violated".to_string());
    }
    let expected = path.with_extension("expected");
    if expected.exists() {
        let text = fs::read_to_string(&expected).map_err(|e| CliError::Input(format!("{}: {e}", expected.display())))?;
        let want: Value =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", expected.display())))?;
        let want = want
            .as_object()
            .ok_or_else(|| CliError::Input(format!("{}: expected a JSON object", expected.display())))?;
        for (k, v) in want {
            if entry.get(k) != Some(v) {
                problems.push(format!("{k}: expected {v}, got {}", entry.get(k).unwrap_or(&Value::Null)));
            }
        }
    }
    if walks > 0 {
        if let Some(p) = walk(f, walks, rng)? {
            problems.push(p);
        }
    }
    let ok = problems.is_empty();
    entry["problems"] = json!(problems);
    Ok((entry, ok))
}

/// Checks every `.front` file in `dir`, in filename order.
pub fn corpus(dir: &Path, walks: usize, seed: u64) -> Result<(Value, bool), CliError> {
    let read = fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "front"))
        .collect();
    paths.sort();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = serde_json::Map::new();
    let mut failures = 0;
    for path in &paths {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let (entry, ok) = corpus_entry(path, walks, &mut rng).map_err(|e| match e {
            CliError::Input(m) => CliError::Input(format!("{name}: {m}")),
            CliError::Precondition(m) => CliError::Precondition(format!("{name}: {m}")),
            CliError::Internal(m) => CliError::Internal(format!("{name}: {m}")),
            other => other,
        })?;
        failures += usize::from(!ok);
        entries.insert(name, entry);
    }
    let summary = json!({
        "diagrams": paths.len(),
        "failures": failures,
        "walks_per_diagram": walks,
        "seed": seed,
        "results": entries,
    });
    Ok((summary, failures == 0))
}
