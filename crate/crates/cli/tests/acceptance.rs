//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::cmp::Ordering;
use std::fs;
use std::time::{Duration, Instant};

use common::{affine_witness, min_norm_by_faces, random_pd, random_points, random_rational};
use gitstrata_cli::cmd_index_set;
use gitstrata_core::blowup::{self, init_state, run, BlowupCase, StratumCell};
use gitstrata_core::hull::min_norm_point;
use gitstrata_core::p1::{self, AffineMap, Configuration, P1Point};
use gitstrata_core::poly::{rudakov_compare, rudakov_sample, HNType};
use gitstrata_core::rational::{frac, int};
use gitstrata_core::sheaf::{self, Length2Sheaf, SplitBundle};
use gitstrata_core::{beta_of_type, Cocharacter, EpsWeight, HilbertPolynomial, PointSupport, Rational, WeightSystem};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sym_index_formula(n: usize) -> Vec<String> {
    let mut v: Vec<i64> = vec![0];
    v.extend((n / 2 + 1..=n).map(|i| 2 * i as i64 - n as i64));
    v.sort();
    v.dedup();
    v.iter().map(ToString::to_string).collect()
}

fn criterion_1() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = dir.path().join("cache");
    let start = Instant::now();
    for n in 2..=10usize {
        let file = dir.path().join(format!("sym{n}.json"));
        fs::write(&file, gitstrata_cli::sym_power_file(n)).map_err(|e| e.to_string())?;
        let report = cmd_index_set(&file, Some(&cache)).map_err(|e| e.to_string())?;
        let got: Vec<String> = serde_json::from_value(report.outputs["betas"].clone()).map_err(|e| e.to_string())?;
        ensure(got == sym_index_formula(n), || format!("n = {n}: got {got:?}, want {:?}", sym_index_formula(n)))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("n = 2..10 exact, {elapsed:.2?}"))
}

fn small_configurations(n: usize) -> Vec<Configuration> {
    let alphabet = [P1Point::affine(0), P1Point::affine(1), P1Point::affine(2), P1Point::Infinity];
    fn rec(alpha: &[P1Point], start: usize, left: usize, cur: &mut Vec<P1Point>, out: &mut Vec<Configuration>) {
        if left == 0 {
            out.push(Configuration::new(cur.clone()).expect("nonempty"));
            return;
        }
        for k in start..alpha.len() {
            cur.push(alpha[k].clone());
            rec(alpha, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&alphabet, 0, n, &mut Vec::new(), &mut out);
    out
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let mut mismatches = Vec::new();
    for n in 1..=6 {
        for c in small_configurations(n) {
            total += 1;
            let engine = p1::engine_stratum(&c).map_err(|e| e.to_string())?;
            if p1::classify(&c) != engine {
                mismatches.push(c.to_string());
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(mismatches.is_empty(), || format!("mismatches: {mismatches:?}"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{total} configurations, 0 mismatches, {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for n in 1..=8usize {
        let ws = WeightSystem::sym_power(n);
        for beta in ws.index_set().map_err(|e| e.to_string())?.into_iter().filter(|b| !b.is_zero()) {
            let lambda = Cocharacter::new(beta.clone());
            let mut in_z = 0;
            for mask in 1u32..(1 << (n + 1)) {
                let x = PointSupport::from_indices((0..=n).filter(|b| mask >> b & 1 == 1));
                if ws.membership_z(&x, &beta).map_err(|e| e.to_string())? {
                    in_z += 1;
                    let mu = ws.mu(&x, &lambda).map_err(|e| e.to_string())?;
                    ensure(mu == -ws.ip().norm_sq(&beta), || format!("n = {n}, beta = {beta}, x = {x:?}"))?;
                }
            }
            ensure(in_z > 0, || format!("Z_{beta} empty for n = {n}"))?;
            checked += in_z;
        }
    }
    Ok(format!("{checked} (beta, x) pairs with mu = -|beta|^2"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cases = 1000;
    for k in 0..cases {
        let dim = rng.gen_range(1..=4);
        let count = rng.gen_range(1..=8);
        let pts = random_points(&mut rng, count, dim, 20);
        let ip = random_pd(&mut rng, dim);
        let got = min_norm_point(&pts, &ip).map_err(|e| e.to_string())?;
        let (want, norm) = min_norm_by_faces(&pts, ip.gram());
        ensure(got.point == want && got.norm_sq == norm, || format!("case {k}: {pts:?}"))?;
    }
    Ok(format!("{cases} random weight sets agree with face enumeration"))
}

fn random_poly(rng: &mut ChaCha8Rng) -> HilbertPolynomial {
    let deg = rng.gen_range(0..=3);
    let mut c: Vec<Rational> = (0..deg).map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
    c.push(frac(rng.gen_range(1..=9), rng.gen_range(1..=4)));
    HilbertPolynomial::new(c)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cases = 1000;
    let cmp = |p: &HilbertPolynomial, q: &HilbertPolynomial| rudakov_compare(p, q).map_err(|e| e.to_string());
    for k in 0..cases {
        let (p, q, r) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
        ensure(cmp(&p, &p)? == Ordering::Equal, || format!("reflexivity fails at {p}"))?;
        let pq = cmp(&p, &q)?;
        ensure(pq == cmp(&q, &p)?.reverse(), || format!("antisymmetry fails at {p}, {q}"))?;
        let (qr, pr) = (cmp(&q, &r)?, cmp(&p, &r)?);
        if pq != Ordering::Greater && qr != Ordering::Greater {
            ensure(pr != Ordering::Greater, || format!("transitivity fails at {p}, {q}, {r}"))?;
        }
        ensure(pq == rudakov_sample(&p, &q, 50, 2500), || format!("case {k}: closed form and limit differ at {p}, {q}"))?;
    }
    Ok(format!("{cases} pairs: preorder laws and sign agreement at (50, 2500)"))
}

fn criterion_6() -> Outcome {
    let tau = HNType::parse("t+2;t+1").map_err(|e| e.to_string())?;
    let worked = beta_of_type(&tau, 5, 10).map_err(|e| e.to_string())?;
    let want = vec![(frac(5, 91), 7), (frac(-5, 78), 6)];
    ensure(worked.entries() == want.as_slice(), || format!("worked value {:?}", worked.entries()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut cases = 0;
    while cases < 500 {
        let degs: Vec<i64> = (0..rng.gen_range(1..=6)).map(|_| rng.gen_range(-3..=3)).collect();
        let b = SplitBundle::new(degs).map_err(|e| e.to_string())?;
        let hn = sheaf::hn_filtration(&b).map_err(|e| e.to_string())?;
        if hn.tau.len() > 3 {
            continue;
        }
        let n = rng.gen_range(5..=15);
        let beta = beta_of_type(&hn.tau, n, n * n).map_err(|e| format!("{b} at n = {n}: {e}"))?;
        ensure(beta.entries().windows(2).all(|w| w[0].0 > w[1].0), || format!("{b}: not decreasing"))?;
        ensure(beta.trace().is_zero(), || format!("{b}: trace {}", beta.trace()))?;
        cases += 1;
    }
    Ok(format!("worked value reproduced; {cases} random types decreasing with trace 0"))
}

fn criterion_7() -> Outcome {
    let mut adapted = 0;
    for n in 1..=8usize {
        for i in n / 2 + 1..=n {
            let h = p1::stratum_hypotheses(n, i).map_err(|e| e.to_string())?;
            if i == n {
                ensure(!h.ss_equals_s, || format!("n = {n}: ss = s should fail for beta = n"))?;
            } else {
                ensure(h.adapted && h.grading && h.ss_equals_s, || format!("n = {n}, i = {i}: {h:?}"))?;
                adapted += 1;
            }
        }
    }
    Ok(format!("{adapted} strata adapted after twist; ss = s fails exactly at beta = n"))
}

fn ew(xs: &[i64]) -> Vec<EpsWeight> {
    xs.iter().map(|&x| EpsWeight::exact(int(x))).collect()
}

fn check_preserving_run(cells: Vec<StratumCell>) -> Result<usize, String> {
    let state = init_state(cells).map_err(|e| e.to_string())?;
    ensure(state.p_preserves, || "p_preserves flag not set".into())?;
    let (d_min, d_max) = (state.d_min, state.d_max);
    let mut target: Vec<String> = state.basin().iter().filter(|c| c.ustab_dim == d_min).map(|c| c.id.clone()).collect();
    let out = run(state).map_err(|e| e.to_string())?;
    ensure(out.state.step_count as u32 <= d_max - d_min, || format!("{} steps", out.state.step_count))?;
    for rec in &out.state.trace {
        ensure(rec.case == BlowupCase::ProperTransform, || format!("step {} is case 2", rec.step))?;
        ensure(rec.d_max_after < rec.d_max_before, || format!("step {} did not decrease d_max", rec.step))?;
    }
    let mut survivors = out.survivors;
    survivors.sort();
    target.sort();
    ensure(survivors == target, || format!("survivors {survivors:?}, expected {target:?}"))?;
    Ok(out.state.step_count)
}

fn criterion_8() -> Outcome {
    let tau = HNType::parse("t+3;t+1").map_err(|e| e.to_string())?;
    let rec = |d: u64, split: bool| Length2Sheaf::abstract_record(tau.clone(), split, d, true).map_err(|e| e.to_string());
    let cells_of = |recs: &[Length2Sheaf]| sheaf::to_blowup_cells(recs).map(|g| g.cells).map_err(|e| e.to_string());
    let four = [rec(0, true)?, rec(0, false)?, rec(3, true)?, rec(3, false)?];
    ensure(cells_of(&four)?.len() == 4, || "expected 4 cells".into())?;
    ensure(check_preserving_run(cells_of(&four)?)? == 1, || "{0,3} should need 1 step".into())?;
    let three = [rec(0, false)?, rec(1, false)?, rec(3, false)?];
    ensure(check_preserving_run(cells_of(&three)?)? == 2, || "{0,1,3} should need 2 steps".into())?;
    ensure(check_preserving_run(cells_of(&[rec(2, true)?])?)? == 0, || "single class should need 0 steps".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut graphs = 3;
    for _ in 0..300 {
        let fixed: Vec<u32> = (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(0..=5)).collect();
        let mut cells: Vec<StratumCell> = fixed
            .iter()
            .enumerate()
            .map(|(k, &d)| StratumCell::new(&format!("z{k}"), ew(&[0]), d, &format!("z{k}")))
            .collect();
        for k in 0..rng.gen_range(0..=8) {
            let t = rng.gen_range(0..fixed.len());
            cells.push(StratumCell::new(&format!("m{k}"), ew(&[0, rng.gen_range(1..=4)]), fixed[t], &format!("z{t}")));
        }
        check_preserving_run(cells)?;
        let recs: Vec<Length2Sheaf> =
            (0..rng.gen_range(1..=6)).map(|_| rec(rng.gen_range(0..=6), rng.gen_bool(0.5))).collect::<Result<_, _>>()?;
        check_preserving_run(cells_of(&recs)?)?;
        graphs += 2;
    }

    let case2 = |cells: Vec<StratumCell>, want: i64| -> Result<(), String> {
        let s = init_state(cells).map_err(|e| e.to_string())?;
        let next = blowup::step(&s).map_err(|e| e.to_string())?;
        let r = &next.trace[0];
        ensure(r.case == BlowupCase::NewMinimum && r.r_min == Some(EpsWeight::exact(int(want))), || {
            format!("case-2 trace {r:?}, expected r_min = {want}")
        })
    };
    case2(
        vec![
            StratumCell::new("Z", ew(&[0]), 2, "Z"),
            StratumCell::new("W1", ew(&[0, 1]), 2, "Z"),
            StratumCell::new("W2", ew(&[0, 2]), 0, "Z"),
        ],
        2,
    )?;
    case2(
        vec![
            StratumCell::new("Z", ew(&[0]), 3, "Z"),
            StratumCell::new("A", ew(&[0, 5]), 0, "Z"),
            StratumCell::new("B", ew(&[0, 3]), 1, "Z"),
            StratumCell::new("C", ew(&[0, 2]), 3, "Z"),
            StratumCell::new("D", ew(&[0, 3]), 2, "Z"),
        ],
        3,
    )?;
    Ok(format!("{graphs} preserving graphs case-1 only and bounded; 2 case-2 traces match"))
}

fn criterion_9() -> Outcome {
    let mut fixtures = 0;
    for tau in ["t+3;t+1", "t+1;t-1", "t+5;2t+3", "2t+5;t"] {
        let tau = HNType::parse(tau).map_err(|e| e.to_string())?;
        let coprime = tau.is_coprime_on_p1();
        for d in 0..=6u64 {
            for split in [false, true] {
                for stable in [false, true] {
                    let s = Length2Sheaf::abstract_record(tau.clone(), split, d, stable).map_err(|e| e.to_string())?;
                    let ts = sheaf::is_tau_stable(&s).map_err(|e| e.to_string())?;
                    let ind = sheaf::is_indecomposable(&s).map_err(|e| e.to_string())?;
                    ensure(ind == !split, || format!("indecomposable iff non-split fails for {s:?}"))?;
                    ensure(!ts || ind, || format!("tau-stable but decomposable: {s:?}"))?;
                    if coprime && stable {
                        ensure(ts == ind, || format!("coprime biconditional fails for {s:?}"))?;
                    }
                    let dims = sheaf::stab_dims(&s).map_err(|e| e.to_string())?;
                    ensure(dims.ustab_dim == d, || "ustab_dim != hom_dim".into())?;
                    ensure(dims.end_dim_claim == ts.then_some(d + 1), || format!("end claim {dims:?} for {s:?}"))?;
                    fixtures += 1;
                }
            }
        }
    }
    let b = SplitBundle::new(vec![2, 0]).map_err(|e| e.to_string())?;
    let s = Length2Sheaf::from_split(&b).map_err(|e| e.to_string())?;
    let end = sheaf::end_dim(&b);
    ensure(end == 5 && s.hom_dim + 1 == 4, || format!("[2,0]: end_dim {end}, hom_dim {}", s.hom_dim))?;
    ensure(!sheaf::is_indecomposable(&s).map_err(|e| e.to_string())?, || "[2,0] should be split".into())?;
    ensure(sheaf::stab_dims(&s).map_err(|e| e.to_string())?.end_dim_claim.is_none(), || "claim made for split".into())?;
    Ok(format!("{fixtures} fixtures; split [2,0] has end_dim 5 != hom_dim + 1 = 4"))
}

/// Hand-picked pairs of affine configurations that no affine map relates.
const INEQUIVALENT: &[(&[i64], &[i64])] = &[
    (&[0, 1, 2], &[0, 1, 3]),
    (&[0, 1, 3], &[0, 1, 4]),
    (&[0, 1, 4], &[0, 1, 5]),
    (&[0, 1, 2], &[0, 0, 1]),
    (&[0, 1, 3], &[0, 2, 7]),
    (&[0, 1, 5], &[0, 2, 3]),
    (&[0, 1, 6], &[0, 1, 7]),
    (&[0, 2, 5], &[0, 1, 2]),
    (&[0, 3, 4], &[0, 1, 2]),
    (&[0, 0, 1], &[0, 1, 3]),
    (&[-1, 0, 1], &[-1, 0, 2]),
    (&[0, 5, 7], &[0, 1, 3]),
    (&[0, 1, 2, 3], &[0, 1, 2, 4]),
    (&[0, 1, 2, 3], &[0, 0, 1, 2]),
    (&[0, 0, 1, 1], &[0, 0, 0, 1]),
    (&[0, 0, 1, 1], &[0, 0, 1, 2]),
    (&[0, 1, 1, 2], &[0, 0, 1, 1]),
    (&[0, 1, 3, 4], &[0, 1, 2, 3]),
    (&[0, 1, 3, 4], &[0, 1, 3, 5]),
    (&[0, 2, 3, 5], &[0, 1, 3, 4]),
    (&[-1, 0, 0, 1], &[-1, -1, 1, 1]),
    (&[-1, 0, 0, 1], &[-2, 0, 1, 1]),
    (&[0, 0, 0, 1], &[0, 1, 1, 2]),
    (&[0, 1, 4, 9], &[0, 1, 2, 3]),
    (&[0, 1, 4, 9], &[0, 1, 3, 9]),
    (&[0, 1, 2, 5], &[0, 1, 2, 6]),
    (&[0, 0, 1, 3], &[0, 0, 1, 2]),
    (&[0, 0, 2, 3], &[0, 0, 1, 3]),
    (&[0, 1, 1, 3], &[0, 1, 1, 2]),
    (&[-2, -1, 1, 2], &[-3, -1, 1, 3]),
    (&[-2, -1, 1, 2], &[-2, -1, 0, 3]),
    (&[0, 2, 4, 7], &[0, 2, 4, 6]),
    (&[0, 1, 2, 3, 4], &[0, 1, 2, 3, 5]),
    (&[0, 1, 2, 3, 4], &[0, 0, 1, 2, 3]),
    (&[-1, 0, 0, 0, 1], &[-1, -1, 0, 1, 1]),
    (&[-2, -1, 0, 1, 2], &[-2, -1, 0, 1, 3]),
    (&[0, 0, 0, 1, 2], &[0, 0, 0, 1, 3]),
    (&[0, 0, 0, 1, 1], &[0, 0, 0, 0, 1]),
    (&[0, 0, 1, 1, 2], &[0, 0, 1, 1, 3]),
    (&[0, 1, 3, 6, 10], &[0, 1, 2, 3, 4]),
    (&[0, 1, 3, 6, 10], &[0, 1, 3, 6, 11]),
    (&[0, 0, 1, 2, 3], &[0, 1, 1, 2, 3]),
    (&[0, 0, 1, 1, 3], &[0, 0, 1, 1, 2]),
    (&[0, 1, 1, 1, 2], &[0, 0, 1, 2, 2]),
    (&[-3, -1, 0, 1, 3], &[-3, -2, 0, 2, 3]),
    (&[0, 2, 3, 4, 6], &[0, 1, 3, 5, 6]),
    (&[0, 1, 2, 3, 4, 5], &[0, 1, 2, 3, 4, 6]),
    (&[0, 0, 1, 1, 2, 2], &[0, 0, 0, 1, 1, 2]),
    (&[0, 0, 0, 1, 1, 1], &[0, 0, 1, 1, 1, 1]),
    (&[-1, -1, 0, 0, 1, 1], &[-1, -1, -1, 1, 1, 1]),
    (&[0, 1, 3, 4, 6, 7], &[0, 1, 2, 4, 5, 7]),
    (&[0, 1, 2, 4, 8, 16], &[0, 1, 2, 4, 8, 15]),
    (&[0, 1, 2], &[0, 1, 8]),
    (&[0, 1, 9], &[0, 2, 9]),
];

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bases: Vec<Configuration> = Vec::new();
    while bases.len() < 60 {
        let n = rng.gen_range(3..=7usize);
        let i = rng.gen_range(n / 2 + 1..n);
        let mut pts = vec![P1Point::Infinity; i];
        pts.extend((0..n - i).map(|_| P1Point::Affine(random_rational(&mut rng, 6))));
        let c = Configuration::new(pts).map_err(|e| e.to_string())?;
        if p1::membership_ts(&c, i).map_err(|e| e.to_string())? {
            bases.push(c);
        }
    }
    let eq = |a: &[Rational], b: &[Rational]| p1::affine_equivalent(a, b).map_err(|e| e.to_string());
    let mut maps_applied = 0;
    for c in &bases {
        let i = c.count_infinity();
        let base = c.affine_values();
        for _ in 0..200 {
            let a = loop {
                let a = random_rational(&mut rng, 7);
                if !a.is_zero() {
                    break a;
                }
            };
            let m = AffineMap::new(a, random_rational(&mut rng, 7)).map_err(|e| e.to_string())?;
            let image = m.apply_all(c);
            ensure(p1::membership_ts(&image, i).map_err(|e| e.to_string())?, || format!("ts not preserved: {c}"))?;
            let img = image.affine_values();
            ensure(eq(&base, &img)? && eq(&img, &base)?, || format!("{c} not equivalent to its image {image}"))?;
            maps_applied += 1;
        }
    }
    for w in bases.windows(3) {
        let (a, b, c) = (w[0].affine_values(), w[1].affine_values(), w[2].affine_values());
        if a.len() == b.len() && b.len() == c.len() {
            ensure(eq(&a, &a)?, || "not reflexive".into())?;
            ensure(eq(&a, &b)? == eq(&b, &a)?, || "not symmetric".into())?;
            if eq(&a, &b)? && eq(&b, &c)? {
                ensure(eq(&a, &c)?, || "not transitive".into())?;
            }
        }
    }
    for (x, y) in INEQUIVALENT {
        let (x, y): (Vec<Rational>, Vec<Rational>) = (x.iter().map(|&v| int(v)).collect(), y.iter().map(|&v| int(v)).collect());
        let show = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        ensure(affine_witness(&x, &y).is_none(), || format!("oracle relates hand-picked pair {} / {}", show(&x), show(&y)))?;
        ensure(!eq(&x, &y)?, || format!("pair {} / {} reported equivalent", show(&x), show(&y)))?;
    }
    Ok(format!(
        "{} bases x 200 maps ({maps_applied} images) equivalent; {} inequivalent pairs separated",
        bases.len(),
        INEQUIVALENT.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("index set of Sym^n for n = 2..10", criterion_1),
        ("geometric and engine strata agree for n <= 6", criterion_2),
        ("mu = -|beta|^2 on Z_beta for n <= 8", criterion_3),
        ("min-norm point matches face enumeration", criterion_4),
        ("Rudakov order laws and limit agreement", criterion_5),
        ("beta(n, m, tau) invariants and worked value", criterion_6),
        ("adaptedness after twist; ss = s fails at beta = n", criterion_7),
        ("blow-up simulator termination and traces", criterion_8),
        ("length-2 sheaf theorems and split counterexample", criterion_9),
        ("affine equivalence on the totally stable locus", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("acceptance {:>2} PASS  {name}: {detail} [{:.2?}]", k + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("acceptance {:>2} FAIL  {name}: {why} [{:.2?}]", k + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
