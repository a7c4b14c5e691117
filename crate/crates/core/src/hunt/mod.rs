//! Exhaustive search for thick te-interlaces through their cores, with
//! canonical-form deduplication, parallel shards and a resumable checkpoint.

mod canonical;
mod cores;

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

pub use canonical::{canonical_form, CanonicalForm};
pub use cores::{even_rows, for_each_core, CoreCounts};

use crate::calculus::lift_core;
use crate::classify::{brick_type_matrix, is_complement_min_non_tu, BrickTag};
use crate::error::{Error, Result};
use crate::exact::subsets::{combinations, next_permutation};
use crate::exact::{int, ExactMatrix};
use canonical::core_matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub size: usize,
    /// Sorted by key.
    pub representatives: Vec<CanonicalForm>,
    pub candidates_examined: u64,
    /// Minimally non-TU cores met, each counted once per row order.
    pub core_classes_examined: u64,
    pub shards: usize,
    /// Shards taken from a checkpoint instead of recomputed.
    pub shards_resumed: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct HuntOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Newline-delimited JSON checkpoint, read on start and appended per shard.
    pub checkpoint: Option<PathBuf>,
}

/// Every minimally non-TU `k×k` 0,1 matrix, one per row/column permutation
/// class.
pub fn enumerate_min_non_tu_cores(k: usize) -> Result<Vec<ExactMatrix>> {
    if k % 2 == 0 {
        return Err(Error::Domain(format!(
            "core size {k} is even; cores whose complement orbit is minimally non-TU have odd size"
        )));
    }
    let mut classes: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
    for_each_core(k, &[], |rows| {
        classes.entry(perm_key(rows, k)).or_insert_with(|| rows.to_vec());
    });
    Ok(classes.into_values().map(|rows| core_matrix(&rows, k)).collect())
}

/// Least sorted row list over column orders.
fn perm_key(rows: &[u32], k: usize) -> Vec<u32> {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best: Option<Vec<u32>> = None;
    loop {
        let mut enc: Vec<u32> = rows
            .iter()
            .map(|&r| {
                perm.iter()
                    .enumerate()
                    .fold(0u32, |acc, (pos, &j)| acc | ((r >> (k - 1 - j) & 1) << (k - 1 - pos)))
            })
            .collect();
        enc.sort_unstable();
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

/// Shard prefixes: the first two core rows (fewer for tiny cores).
pub fn shard_prefixes(k: usize) -> Vec<Vec<usize>> {
    combinations(even_rows(k).len(), k.min(2))
}

#[derive(Default)]
struct ShardResult {
    counts: CoreCounts,
    found: Vec<ExactMatrix>,
}

fn run_shard(k: usize, prefix: &[usize]) -> Result<ShardResult> {
    let mut found = Vec::new();
    let mut err = None;
    let counts = for_each_core(k, prefix, |rows| {
        if err.is_some() {
            return;
        }
        let core = core_matrix(rows, k);
        let step = || -> Result<Option<ExactMatrix>> {
            if !is_complement_min_non_tu(&core)? {
                return Ok(None);
            }
            let lifted = lift_core(&core);
            match brick_type_matrix(&lifted)? {
                Some(t) if t.tag == BrickTag::ThickInterlace => Ok(Some(lifted)),
                _ => Ok(None),
            }
        };
        match step() {
            Ok(Some(m)) => found.push(m),
            Ok(None) => {}
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(ShardResult { counts, found }),
    }
}

fn matrix_json(m: &ExactMatrix) -> Value {
    Value::Array(
        m.rows_iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn matrix_from_json(v: &Value) -> Option<ExactMatrix> {
    let rows = v.as_array()?;
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let mut row = Vec::new();
        for x in r.as_array()? {
            row.push(int(x.as_str()?.parse().ok()?));
        }
        out.push(row);
    }
    ExactMatrix::from_rows(out).ok()
}

fn read_checkpoint(path: &Path, size: usize) -> Result<BTreeMap<Vec<usize>, ShardResult>> {
    let mut done = BTreeMap::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(done),
        Err(e) => return Err(e.into()),
    };
    for (ln, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::Parse { line: ln + 1, column: 1, message: msg.to_string() };
        let v: Value = serde_json::from_str(&line).map_err(|e| bad(&e.to_string()))?;
        if v["size"].as_u64() != Some(size as u64) {
            return Err(bad("checkpoint belongs to a different size"));
        }
        if v["status"] != "done" {
            continue;
        }
        let prefix: Vec<usize> = v["shardPrefix"]
            .as_array()
            .ok_or_else(|| bad("missing shardPrefix"))?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| bad("bad shardPrefix"))?;
        let count = |key: &str| v[key].as_u64().ok_or_else(|| bad(&format!("missing {key}")));
        let counts = CoreCounts { candidates: count("candidates")?, cores: count("cores")? };
        let found = v["found"]
            .as_array()
            .ok_or_else(|| bad("missing found"))?
            .iter()
            .map(matrix_from_json)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("bad matrix in found"))?;
        done.insert(prefix, ShardResult { counts, found });
    }
    Ok(done)
}

pub fn enumerate_thick_interlaces(n: usize) -> Result<SearchReport> {
    enumerate_thick_interlaces_with(n, &HuntOptions::default())
}

pub fn enumerate_thick_interlaces_with(n: usize, opts: &HuntOptions) -> Result<SearchReport> {
    if n % 2 == 1 || n < 2 {
        return Err(Error::Domain(format!(
            "size {n}: thick te-interlaces have even size, their cores having odd size"
        )));
    }
    let start = Instant::now();
    let k = n - 1;
    let prefixes = shard_prefixes(k);
    let mut done = match &opts.checkpoint {
        Some(p) => read_checkpoint(p, n)?,
        None => BTreeMap::new(),
    };
    done.retain(|p, _| prefixes.contains(p));
    let resumed = done.len();
    let writer = match &opts.checkpoint {
        Some(p) => Some(Mutex::new(OpenOptions::new().create(true).append(true).open(p)?)),
        None => None,
    };
    let todo: Vec<&Vec<usize>> = prefixes.iter().filter(|p| !done.contains_key(*p)).collect();
    let work = || -> Result<Vec<(Vec<usize>, ShardResult)>> {
        todo.par_iter()
            .map(|&prefix| {
                let r = run_shard(k, prefix)?;
                if let Some(w) = &writer {
                    let rec = json!({
                        "size": n,
                        "shardPrefix": prefix,
                        "status": "done",
                        "candidates": r.counts.candidates,
                        "cores": r.counts.cores,
                        "found": r.found.iter().map(matrix_json).collect::<Vec<_>>(),
                    });
                    let mut f = w.lock().map_err(|_| Error::Io("checkpoint lock poisoned".into()))?;
                    writeln!(f, "{rec}")?;
                    f.flush()?;
                }
                Ok((prefix.clone(), r))
            })
            .collect()
    };
    let fresh = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Unsupported(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    done.extend(fresh);
    let mut reps: BTreeMap<Vec<u32>, CanonicalForm> = BTreeMap::new();
    let (mut candidates, mut cores) = (0, 0);
    for r in done.values() {
        candidates += r.counts.candidates;
        cores += r.counts.cores;
        for m in &r.found {
            let cf = canonical_form(m)?;
            reps.entry(cf.key.clone()).or_insert(cf);
        }
    }
    Ok(SearchReport {
        size: n,
        representatives: reps.into_values().collect(),
        candidates_examined: candidates,
        core_classes_examined: cores,
        shards: prefixes.len(),
        shards_resumed: resumed,
        elapsed: start.elapsed(),
    })
}

/// Direct enumeration of all `n×n` ±1 matrices with all-ones first row and
/// column, classified one by one; a cross-check for small `n`.
pub fn raw_thick_interlaces(n: usize) -> Result<Vec<CanonicalForm>> {
    if n < 2 || (n - 1) * (n - 1) > 25 {
        return Err(Error::Unsupported(format!("raw enumeration of size {n}")));
    }
    let k = n - 1;
    let found: Result<Vec<Option<CanonicalForm>>> = (0u32..1 << (k * k))
        .into_par_iter()
        .map(|mask| {
            let rows: Vec<u32> = (0..k).map(|i| mask >> (i * k) & ((1 << k) - 1)).collect();
            let a = lift_core(&core_matrix(&rows, k));
            if a.rank() < n {
                return Ok(None);
            }
            match brick_type_matrix(&a)? {
                Some(t) if t.tag == BrickTag::ThickInterlace => Ok(Some(canonical_form(&a)?)),
                _ => Ok(None),
            }
        })
        .collect();
    let set: BTreeMap<Vec<u32>, CanonicalForm> = found?.into_iter().flatten().map(|c| (c.key.clone(), c)).collect();
    Ok(set.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{camion_conditions, is_te};
    use crate::fixtures;

    #[test]
    fn no_cores_of_size_one() {
        assert!(enumerate_min_non_tu_cores(1).unwrap().is_empty());
        assert!(enumerate_min_non_tu_cores(2).is_err());
    }

    #[test]
    fn size_three_cores() {
        let cores = enumerate_min_non_tu_cores(3).unwrap();
        let cycle = ExactMatrix::from_ints(&[[1, 1, 0], [1, 0, 1], [0, 1, 1]]);
        assert!(cores.iter().any(|c| crate::calculus::perm_equivalent(c, &cycle)));
    }

    #[test]
    fn size_five_cores_satisfy_camion() {
        let cores = enumerate_min_non_tu_cores(5).unwrap();
        assert!(!cores.is_empty());
        assert!(cores.iter().all(|c| camion_conditions(&c.to_int().unwrap())));
    }

    #[test]
    fn size_four_hunt_matches_raw_oracle() {
        let r = enumerate_thick_interlaces(4).unwrap();
        assert_eq!(r.representatives.len(), 1);
        let target = canonical_form(&fixtures::conjecture4()).unwrap();
        assert_eq!(r.representatives[0].key, target.key);
        let raw = raw_thick_interlaces(4).unwrap();
        assert_eq!(raw.iter().map(|c| &c.key).collect::<Vec<_>>(), vec![&target.key]);
        assert!(is_te(&r.representatives[0].matrix));
    }

    #[test]
    fn odd_sizes_rejected() {
        assert!(enumerate_thick_interlaces(5).is_err());
    }

    #[test]
    fn checkpoint_resume_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hunt.ndjson");
        let opts = HuntOptions { jobs: Some(2), checkpoint: Some(path.clone()) };
        let first = enumerate_thick_interlaces_with(4, &opts).unwrap();
        assert_eq!(first.shards_resumed, 0);
        let second = enumerate_thick_interlaces_with(4, &opts).unwrap();
        assert_eq!(second.shards_resumed, second.shards);
        assert_eq!(first.representatives, second.representatives);
        assert_eq!(first.candidates_examined, second.candidates_examined);
        assert_eq!(first.core_classes_examined, second.core_classes_examined);
    }
}
