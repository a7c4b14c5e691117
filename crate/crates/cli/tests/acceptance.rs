//! Acceptance run: one line per criterion, zero tolerance throughout.
//!
//! Set `TEQ_ACCEPTANCE_STRICT=1` to exit nonzero on any failure, including
//! criteria recorded as unattainable. Set `TEQ_HUNT8=1` to include the
//! long size-8 hunt.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use teq_core::calculus::lift_core;
use teq_core::classify::{
    brick_type_matrix, check_trim_equimodularity, eqdet_matrix, is_complement_tu, is_equimodular_matrix,
    is_te, is_te_by_trims, is_totally_equimodular, BrickTag,
};
use teq_core::cone::TeCone;
use teq_core::decompose::{decompose_te_set, eqdet_from_decomposition, minimal_non_tu_row_subsets};
use teq_core::exact::{gcddet_matrix, int};
use teq_core::hilbert::{hilbert_basis_brick, hilbert_oracle, is_hilbert_element, thick_case, zonotope_points, ThickCase};
use teq_core::hunt::{canonical_form, raw_thick_interlaces};
use teq_core::triangulate::{
    caratheodory_decompose, stellar_lace_triangulation, thick_case_a_triangulation, thick_case_b_triangulation,
    thin_triangulation, triangulate_te_cone, verify_triangulation, Triangulation,
};
use teq_core::{fixtures, ExactMatrix, Rat, RowSet};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let e = start.elapsed();
    if e > limit {
        Err(format!("took {e:.2?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn teq(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_teq")).args(args).output().expect("run teq");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}.mat", env!("CARGO_MANIFEST_DIR"))
}

fn sorted(v: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn negate_row(a: &ExactMatrix, r: usize) -> ExactMatrix {
    ExactMatrix::from_fn(a.nrows(), a.ncols(), |i, j| if i == r { -a.get(i, j) } else { a.get(i, j).clone() })
}

fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, vals: &[i64]) -> ExactMatrix {
    ExactMatrix::from_fn(m, n, |_, _| int(*vals.choose(rng).expect("values")))
}

/// A cycle matrix with ±1 entries and determinant ±2, padded with zero or
/// signed copies of its columns and column-shuffled.
fn random_lace(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> ExactMatrix {
    loop {
        let base = ExactMatrix::from_fn(n, n, |i, j| {
            if n == 2 || j == i || j == (i + 1) % n {
                int(if rng.gen_bool(0.5) { 1 } else { -1 })
            } else {
                int(0)
            }
        });
        let d = base.det().expect("square");
        if d != int(2) && d != int(-2) {
            continue;
        }
        let mut cols: Vec<Vec<Rat>> = (0..n).map(|j| base.column(j)).collect();
        for _ in 0..extra {
            let c = match rng.gen_range(0..3) {
                0 => vec![int(0); n],
                1 => cols[rng.gen_range(0..n)].clone(),
                _ => cols[rng.gen_range(0..n)].iter().map(|x| -x).collect(),
            };
            cols.push(c);
        }
        cols.shuffle(rng);
        return ExactMatrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone());
    }
}

/// Thin interlaces over complement-TU `k×k` cores, one per canonical class.
fn thin_interlaces(k: usize) -> Vec<ExactMatrix> {
    let mut classes = BTreeMap::new();
    for mask in 0u32..1 << (k * k) {
        let b = ExactMatrix::from_fn(k, k, |i, j| int(i64::from(mask >> (i * k + j) & 1)));
        let a = lift_core(&b);
        if a.rank() == k + 1 && is_complement_tu(&b).expect("0,1 core") {
            classes.entry(canonical_form(&a).expect("±1").key).or_insert(a);
        }
    }
    classes.into_values().collect()
}

fn random_tu_set(rng: &mut ChaCha8Rng) -> ExactMatrix {
    loop {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(m..=m + 1);
        let a = random_matrix(rng, m, n, &[0, 0, 1, -1]);
        if a.has_full_row_rank() && teq_core::classify::is_tu(&a) {
            return a;
        }
    }
}

/// Bricks placed on the block diagonal, with the partition they should
/// decompose back into.
struct Assembly {
    matrix: ExactMatrix,
    tu_rows: Vec<usize>,
    bricks: BTreeSet<(BrickTag, Vec<usize>)>,
}

fn random_assembly(rng: &mut ChaCha8Rng, thin3: &[ExactMatrix]) -> Assembly {
    let mut blocks: Vec<(ExactMatrix, BrickTag)> = Vec::new();
    let mut rows = 0;
    let count = rng.gen_range(1..=3);
    while blocks.len() < count {
        let (b, tag) = match rng.gen_range(0..6) {
            0 => (random_tu_set(rng), BrickTag::TuSet),
            1 => {
                let n = rng.gen_range(3..=4);
                let extra = rng.gen_range(0..=1);
                (random_lace(rng, n, extra), BrickTag::TeLace)
            }
            // Pairs decompose as thin interlaces of size 2.
            2 => {
                let extra = rng.gen_range(0..=1);
                (random_lace(rng, 2, extra), BrickTag::ThinInterlace)
            }
            3 => (thin3.choose(rng).expect("thin").clone(), BrickTag::ThinInterlace),
            4 => (fixtures::conjecture4(), BrickTag::ThickInterlace),
            _ => (fixtures::conjecture6(), BrickTag::ThickInterlace),
        };
        if rows + b.nrows() > 9 {
            if blocks.is_empty() {
                continue;
            }
            break;
        }
        rows += b.nrows();
        blocks.push((b, tag));
    }
    blocks.shuffle(rng);
    let cols: usize = blocks.iter().map(|(b, _)| b.ncols()).sum();
    let mut data = vec![vec![int(0); cols]; rows];
    let (mut r0, mut c0) = (0, 0);
    let mut tu_rows = Vec::new();
    let mut bricks = BTreeSet::new();
    for (b, tag) in &blocks {
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                data[r0 + i][c0 + j] = b.get(i, j).clone();
            }
        }
        let idx: Vec<usize> = (r0..r0 + b.nrows()).collect();
        if *tag == BrickTag::TuSet {
            tu_rows.extend(idx);
        } else {
            bricks.insert((*tag, idx));
        }
        r0 += b.nrows();
        c0 += b.ncols();
    }
    Assembly { matrix: ExactMatrix::from_rows(data).expect("rectangular"), tu_rows, bricks }
}

fn assemblies() -> Vec<Assembly> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let thin3 = thin_interlaces(2);
    (0..200).map(|_| random_assembly(&mut rng, &thin3)).collect()
}

/// The 6-row sample fixture through the CLI, then its minimal non-TU row subsets.
fn criterion1() -> Check {
    let start = Instant::now();
    let (code, out) = teq(&["check-te", &fixture("figure1")]);
    ensure!(code == 0 && out.contains("totally equimodular: true"), "check-te exit {code}: {out}");
    let a = fixtures::figure1();
    ensure!(is_totally_equimodular(&a).holds(), "library TE test disagrees");
    let found: BTreeSet<Vec<usize>> = minimal_non_tu_row_subsets(&a).map_err(|e| e.to_string())?.into_iter().collect();
    let listed: BTreeSet<Vec<usize>> = [vec![1, 2, 3, 4], vec![3, 4, 5, 6], vec![1, 3, 5], vec![2, 3, 6]]
        .into_iter()
        .map(|l| l.into_iter().map(|i| i - 1).collect())
        .collect();
    ensure!(found == listed, "minimal non-TU subsets {found:?}");
    within(start, Duration::from_secs(1))?;
    Ok(format!("4 laces recovered in {:.2?}", start.elapsed()))
}

fn criterion2() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut te = 0;
    for _ in 0..500 {
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=6));
        let a = random_matrix(&mut rng, m, n, &[0, 1, -1]);
        let brute = is_te(&a);
        ensure!(is_te_by_trims(&a) == brute, "trim test disagrees on {a:?}");
        te += usize::from(brute);
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("500 agree ({te} TE) in {:.2?}", start.elapsed()))
}

fn criterion3() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut done, mut equi) = (0, 0);
    while done < 500 {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(m..=6);
        let mut a = random_matrix(&mut rng, m, n, &[-3, -2, -1, 0, 1, 2, 3]);
        let pm: Vec<Rat> = (0..n).map(|_| int(rng.gen_range(-1..=1))).collect();
        let row = rng.gen_range(0..m);
        a = ExactMatrix::from_fn(m, n, |i, j| if i == row { pm[j].clone() } else { a.get(i, j).clone() });
        if !a.has_full_row_rank() {
            continue;
        }
        let direct = is_equimodular_matrix(&a);
        let trims = check_trim_equimodularity(&a, row).map_err(|e| e.to_string())?;
        ensure!(trims == direct, "row {row} of {a:?}: trims {trims}, direct {direct}");
        done += 1;
        equi += usize::from(direct);
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("500 agree ({equi} equimodular) in {:.2?}", start.elapsed()))
}

fn criterion4(corpus: &[Assembly]) -> Check {
    let start = Instant::now();
    for a in corpus {
        let m = &a.matrix;
        ensure!(is_totally_equimodular(m).holds(), "assembled union not TE: {m:?}");
        let s = RowSet::all(m.clone());
        let d = decompose_te_set(&s).map_err(|e| e.to_string())?;
        let mut tu = d.tu_set.clone();
        tu.sort_unstable();
        ensure!(tu == a.tu_rows, "tu-set {tu:?} vs {:?}", a.tu_rows);
        let got: BTreeSet<(BrickTag, Vec<usize>)> =
            d.parts().into_iter().filter(|(t, _)| *t != BrickTag::TuSet).collect();
        ensure!(got == a.bricks, "bricks {got:?} vs {:?}", a.bricks);
        let direct = eqdet_matrix(m).map_err(|e| e.to_string())?;
        ensure!(Rat::from_integer(eqdet_from_decomposition(&d)) == direct, "eqdet mismatch on {m:?}");
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("200 unions round-trip in {:.2?}", start.elapsed()))
}

fn zonotope_matches(a: &ExactMatrix) -> Result<(), String> {
    let cone = TeCone::new(a.clone()).map_err(|e| e.to_string())?;
    let z = zonotope_points(&cone).len();
    let g = gcddet_matrix(a).map_err(|e| e.to_string())?;
    ensure!(g == z.into(), "{z} zonotope points vs gcddet {g} for {a:?}");
    Ok(())
}

fn criterion5(corpus: &[Assembly], extra: &[ExactMatrix]) -> Check {
    let start = Instant::now();
    for a in corpus.iter().map(|a| &a.matrix).chain(extra) {
        zonotope_matches(a)?;
    }
    Ok(format!("{} cones in {:.2?}", corpus.len() + extra.len(), start.elapsed()))
}

fn hilbert_matches(a: &ExactMatrix) -> Result<(), String> {
    let cone = TeCone::new(a.clone()).map_err(|e| e.to_string())?;
    let formula = hilbert_basis_brick(a).map_err(|e| e.to_string())?;
    ensure!(
        sorted(&formula.elements) == sorted(&hilbert_oracle(&cone).elements),
        "formula and oracle differ on {a:?}"
    );
    Ok(())
}

fn criterion6_corpus() -> (Vec<ExactMatrix>, Vec<ExactMatrix>) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let laces = (0..100)
        .map(|_| {
            let n = rng.gen_range(2..=5);
            let extra = rng.gen_range(0..=2);
            random_lace(&mut rng, n, extra)
        })
        .collect();
    let thin = (1..=4).flat_map(thin_interlaces).filter(|a| a.nrows() > 2).collect();
    (laces, thin)
}

fn criterion6(laces: &[ExactMatrix], thin: &[ExactMatrix]) -> Check {
    let start = Instant::now();
    for a in laces {
        let t = brick_type_matrix(a).map_err(|e| e.to_string())?;
        ensure!(t.map(|t| t.tag) == Some(BrickTag::TeLace), "sampled lace misclassified: {a:?}");
        hilbert_matches(a)?;
    }
    for a in thin {
        let t = brick_type_matrix(a).map_err(|e| e.to_string())?;
        ensure!(t.map(|t| t.tag) == Some(BrickTag::ThinInterlace), "thin interlace misclassified: {a:?}");
        hilbert_matches(a)?;
    }
    for a in [fixtures::conjecture4(), fixtures::conjecture6()] {
        hilbert_matches(&a)?;
        let n = a.nrows();
        // Parity of the +1 count in the first column, which all columns share.
        let p = (0..n).filter(|&i| a.get(i, 0) == &int(1)).count() % 2;
        let want = if n % 4 == (2 * p) % 4 { ThickCase::A } else { ThickCase::B };
        let (_, case) = thick_case(&a).map_err(|e| e.to_string())?;
        ensure!(case == want, "selector gives {case:?} for size {n}, parity {p}");
        let oracle = hilbert_oracle(&TeCone::new(a.clone()).map_err(|e| e.to_string())?);
        let pairs = n * (n - 1) / 2;
        let extras = oracle.len() - n - pairs;
        ensure!(extras == if case == ThickCase::A { 1 } else { n }, "{extras} extra elements for size {n}");
    }
    let four = hilbert_basis_brick(&fixtures::conjecture4()).map_err(|e| e.to_string())?;
    let n = 4;
    let extra: Vec<&Vec<i64>> = four.elements[n + n * (n - 1) / 2..].iter().collect();
    ensure!(extra == vec![&vec![1, 0, 0, 0]], "extra elements {extra:?}");
    within(start, Duration::from_secs(600))?;
    Ok(format!("{} laces, {} thin, 2 thick in {:.2?}", laces.len(), thin.len(), start.elapsed()))
}

fn verified(a: &ExactMatrix, t: &Triangulation, cells: Option<usize>, what: &str) -> Result<(), String> {
    let cone = TeCone::new(a.clone()).map_err(|e| e.to_string())?;
    let r = verify_triangulation(&cone, t).map_err(|e| e.to_string())?;
    ensure!(r.all_pass(), "{what}: {}", r.summary());
    if let Some(c) = cells {
        ensure!(t.cells.len() == c, "{what}: {} cells, expected {c}", t.cells.len());
    }
    Ok(())
}

fn criterion7(laces: &[ExactMatrix], thin: &[ExactMatrix]) -> Check {
    let start = Instant::now();
    let err = |e: teq_core::Error| e.to_string();
    let mut seen = BTreeSet::new();
    for a in laces.iter().filter(|a| seen.insert(a.nrows())) {
        verified(a, &stellar_lace_triangulation(a).map_err(err)?, Some(a.nrows()), "lace")?;
    }
    let mut thin_sizes = BTreeSet::new();
    for a in thin.iter().filter(|a| a.nrows() <= 5) {
        let n = a.nrows();
        thin_sizes.insert(n);
        verified(a, &thin_triangulation(a).map_err(err)?, Some(1 << (n - 1)), "thin")?;
    }
    ensure!(thin_sizes == BTreeSet::from([3, 4, 5]), "thin sizes {thin_sizes:?}");
    let c4 = fixtures::conjecture4();
    let c6 = fixtures::conjecture6();
    verified(&c4, &thick_case_a_triangulation(&c4).map_err(err)?, Some(16), "thick 4 case a")?;
    let c6a = negate_row(&c6, 0);
    verified(&c6a, &thick_case_a_triangulation(&c6a).map_err(err)?, None, "thick 6 case a")?;
    let c4b = negate_row(&c4, 0);
    let t4b = thick_case_b_triangulation(&c4b).map_err(err)?;
    verified(&c4b, &t4b, None, "thick 4 case b")?;
    let t6b = thick_case_b_triangulation(&c6).map_err(err)?;
    verified(&c6, &t6b, None, "thick 6 case b")?;
    within(start, Duration::from_secs(1800))?;
    Ok(format!(
        "all checks pass; case b cells {} (n=4), {} (n=6), in {:.2?}",
        t4b.cells.len(),
        t6b.cells.len(),
        start.elapsed()
    ))
}

fn criterion8() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut sets = 0;
    while sets < 50 {
        let m = rng.gen_range(1..=5);
        let n = rng.gen_range(m..=6);
        let a = random_matrix(&mut rng, m, n, &[0, 1]);
        if !a.has_full_row_rank() || !is_te(&a) {
            continue;
        }
        sets += 1;
        let cone = TeCone::new(a.clone()).map_err(|e| e.to_string())?;
        let t = triangulate_te_cone(&cone).map_err(|e| e.to_string())?;
        let z = zonotope_points(&cone);
        let gens = cone.generator_rows();
        for _ in 0..20 {
            let mut x = z.points[rng.gen_range(0..z.len())].clone();
            for g in gens {
                let c = rng.gen_range(0..4);
                for (xi, gi) in x.iter_mut().zip(g) {
                    *xi += c * gi;
                }
            }
            let terms = caratheodory_decompose(&cone, &t, &x).map_err(|e| e.to_string())?;
            ensure!(terms.len() <= cone.dim(), "{} terms in dimension {}", terms.len(), cone.dim());
            ensure!(terms.iter().all(|(_, c)| *c > 0), "nonpositive coefficient for {x:?}");
            let mut sum = vec![0i64; x.len()];
            for (v, c) in &terms {
                for (s, vi) in sum.iter_mut().zip(v) {
                    *s += c * vi;
                }
            }
            ensure!(sum == x, "terms re-sum to {sum:?}, not {x:?}");
        }
    }
    Ok(format!("50 sets x 20 points in {:.2?}", start.elapsed()))
}

fn hunt_keys(size: usize) -> Result<Vec<Value>, String> {
    let (code, out) = teq(&["hunt", "--size", &size.to_string()]);
    ensure!(code == 0, "hunt --size {size} exit {code}");
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    Ok(v["result"]["representatives"].as_array().cloned().unwrap_or_default())
}

fn key_json(a: &ExactMatrix) -> Value {
    let key = canonical_form(a).expect("±1").key;
    Value::Array(key.iter().map(|k| Value::String(k.to_string())).collect())
}

fn criterion9() -> Check {
    let mut notes = Vec::new();
    for (size, want, limit) in [
        (4, fixtures::conjecture4(), Duration::from_secs(60)),
        (6, fixtures::conjecture6(), Duration::from_secs(3600)),
    ] {
        let start = Instant::now();
        let reps = hunt_keys(size)?;
        ensure!(reps.len() == 1, "size {size}: {} representatives", reps.len());
        ensure!(reps[0]["key"] == key_json(&want), "size {size}: representative is not the expected matrix");
        within(start, limit)?;
        notes.push(format!("size {size} in {:.2?}", start.elapsed()));
    }
    let raw = raw_thick_interlaces(4).map_err(|e| e.to_string())?;
    ensure!(raw.len() == 1 && raw[0].key == canonical_form(&fixtures::conjecture4()).expect("±1").key, "raw oracle");
    if std::env::var("TEQ_HUNT8").is_ok_and(|v| v == "1") {
        let start = Instant::now();
        let reps = hunt_keys(8)?;
        ensure!(reps.is_empty(), "size 8: {} representatives", reps.len());
        notes.push(format!("size 8 empty in {:.2?}", start.elapsed()));
    } else {
        notes.push("size 8 skipped (set TEQ_HUNT8=1)".into());
    }
    Ok(notes.join(", "))
}

/// The vector identity holds; the membership claim is checked literally on
/// the simplicial cone over rows 3..6, where the vector is not in the cone.
fn criterion10() -> Check {
    let m = fixtures::figure1();
    let row = |i: usize| -> Vec<i64> {
        m.row(i).iter().map(|x| teq_core::classify::rat_to_i64(x).expect("integer")).collect()
    };
    let h1 = vec![2, 1, 1, 1];
    let h4 = vec![1, 0, 1, 1];
    let m1 = row(0);
    let sum: Vec<i64> = h4.iter().zip(&m1).map(|(a, b)| a + b).collect();
    ensure!(sum == h1 && m1 == vec![1, 1, 0, 0], "identity fails: {sum:?}");
    let sub = TeCone::new(m.select_rows(&[2, 3, 4, 5])).map_err(|e| e.to_string())?;
    match is_hilbert_element(&sub, &h4) {
        Ok(true) => Ok("identity holds; h4 is a Hilbert element of the subcone".into()),
        Ok(false) => Err("identity holds; h4 is in the subcone but reducible".into()),
        Err(e) => Err(format!(
            "identity holds; membership query on rows 3..6 returns `{e}` (recorded as unattainable)"
        )),
    }
}

/// What the negative fixture does show: h4 is the half-sum of the lace on
/// rows 2, 3, 6 and a Hilbert element of every simplicial subcone holding it.
fn criterion10_companion() -> Check {
    let m = fixtures::figure1();
    let h4 = [1, 0, 1, 1];
    for rows in [vec![1, 2, 5], vec![0, 1, 2, 5], vec![1, 2, 3, 5], vec![1, 2, 4, 5]] {
        let cone = TeCone::new(m.select_rows(&rows)).map_err(|e| e.to_string())?;
        ensure!(is_hilbert_element(&cone, &h4) == Ok(true), "not a Hilbert element on rows {rows:?}");
    }
    Ok("h4 is a Hilbert element of the lace cone on rows 2, 3, 6 and its three simplicial extensions".into())
}

fn main() {
    let strict = std::env::var("TEQ_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let corpus = assemblies();
    let (laces, thin) = criterion6_corpus();
    let mut extra: Vec<ExactMatrix> = laces.clone();
    extra.extend(thin.iter().cloned());
    extra.extend([
        fixtures::conjecture4(),
        fixtures::conjecture6(),
        negate_row(&fixtures::conjecture4(), 0),
        negate_row(&fixtures::conjecture6(), 0),
    ]);
    let results: Vec<(u32, Check)> = vec![
        (1, criterion1()),
        (2, criterion2()),
        (3, criterion3()),
        (4, criterion4(&corpus)),
        (5, criterion5(&corpus, &extra)),
        (6, criterion6(&laces, &thin)),
        (7, criterion7(&laces, &thin)),
        (8, criterion8()),
        (9, criterion9()),
        (10, criterion10()),
    ];
    // Criteria whose literal statement cannot hold; they still print FAIL.
    let unattainable = [10];
    let mut unexpected = 0;
    let companion = criterion10_companion();
    for (n, r) in &results {
        match r {
            Ok(msg) => println!("criterion {n:>2}: PASS  {msg}"),
            Err(msg) => {
                println!("criterion {n:>2}: FAIL  {msg}");
                if strict || !unattainable.contains(n) {
                    unexpected += 1;
                }
            }
        }
    }
    match &companion {
        Ok(msg) => println!("criterion 10 companion: PASS  {msg}"),
        Err(msg) => {
            println!("criterion 10 companion: FAIL  {msg}");
            unexpected += 1;
        }
    }
    if results.iter().any(|(n, r)| unattainable.contains(n) && r.is_ok()) {
        println!("note: a criterion recorded as unattainable now passes; revisit the record");
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
