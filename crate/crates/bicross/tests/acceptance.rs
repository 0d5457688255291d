//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use bicross_core::bicrossed::{
    build_w_hat, conjugates, negative_controls, theta_report, w_from_w_hat, FiniteQG,
};
use bicross_core::cohomology::{
    coboundary, cocycle_representatives, extension_group, is_cocycle, CocyclePair, CohomologyContext,
};
use bicross_core::continuous::axb::axb_example_check;
use bicross_core::continuous::cocycle::{cocycle_example_check, CocycleCheckConfig};
use bicross_core::continuous::infinitesimal::infinitesimal_check;
use bicross_core::continuous::sl2::sl2_example_check;
use bicross_core::continuous::ExampleReport;
use bicross_core::fixtures::{all_specs, s4_pair, swap_pair, FixtureSpec};
use bicross_core::matched::MatchedPair;
use bicross_core::phase::Phase;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || format!("took {elapsed:.2?}, limit {limit_s} s"))
}

/// Class representatives of `pair`, trivial class first.
fn classes(pair: &MatchedPair) -> Vec<CocyclePair> {
    let inv = extension_group(pair);
    let reps = cocycle_representatives(pair, inv.exponent().max(1));
    assert!(reps.complete, "finite Γ expected");
    reps.cocycles
}

fn gamma_via_cli(dir: &Path, pair_file: &str) -> Result<(u64, Vec<u64>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bicross"))
        .current_dir(dir)
        .args(["extgroup", pair_file])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("exit {:?}", out.status.code()))?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let r = &v["result"];
    let rank = r["torus_rank"].as_u64().ok_or("torus_rank missing")?;
    let f = r["invariant_factors"]
        .as_array()
        .ok_or("invariant_factors missing")?
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    Ok((rank, f))
}

fn crit1(dir: &Path) -> Verdict {
    let t = Instant::now();
    let g = gamma_via_cli(dir, "kac-paljutkin.pair.json")?;
    let elapsed = t.elapsed();
    ensure(g == (0, vec![2]), || format!("got {g:?}"))?;
    within(elapsed, 5.0)?;
    Ok(format!("torus_rank 0, invariant_factors [2] in {elapsed:.2?}"))
}

fn crit2(dir: &Path) -> Verdict {
    let mut notes = Vec::new();
    for (m, file) in [(2, "kac-paljutkin.pair.json"), (3, "swap-3.pair.json"), (4, "swap-4.pair.json")] {
        let t = Instant::now();
        let g = gamma_via_cli(dir, file)?;
        let elapsed = t.elapsed();
        ensure(g == (0, vec![m]), || format!("m = {m}: got {g:?}"))?;
        within(elapsed, 60.0)?;
        notes.push(format!("m={m}: Z/{m} ({elapsed:.2?})"));
    }
    Ok(notes.join(", "))
}

fn crit3(dir: &Path) -> Verdict {
    let g = gamma_via_cli(dir, "s4.pair.json")?;
    ensure(g == (0, vec![]), || format!("got {g:?}"))?;
    let pair = s4_pair();
    ensure(pair.n1() == 6 && pair.n2() == 4, || format!("orders {} and {}", pair.n1(), pair.n2()))?;
    Ok(String::from("|H1| = 6, |H2| = 4, Γ trivial"))
}

fn gamma_pairs() -> Vec<(String, MatchedPair)> {
    let mut v: Vec<(String, MatchedPair)> = (2..=4).map(|m| (format!("swap-{m}"), swap_pair(m))).collect();
    v.push((String::from("s4"), s4_pair()));
    v
}

const SUITE: [&str; 6] = [
    "pentagon",
    "(Δ⊗ι)(W) = W13 W23",
    "Δα = (α⊗α)Δ2",
    "Haar left invariance",
    "ΔR = σ(R⊗R)Δ",
    "S = R, S² = ι",
];

fn crit4() -> Verdict {
    let t = Instant::now();
    let mut count = 0;
    for (name, pair) in gamma_pairs() {
        for (k, c) in classes(&pair).iter().enumerate() {
            let qg = FiniteQG::new(&pair, c).map_err(|e| e.to_string())?;
            let results = qg.verify();
            for axiom in SUITE {
                let r = results.iter().find(|r| r.axiom == axiom).ok_or(format!("no check named {axiom}"))?;
                ensure(r.passed, || format!("{name} class {k}: {axiom} failed: {:?}", r.witness))?;
            }
            let controls = negative_controls(&qg);
            for axiom in SUITE {
                let c = controls.iter().find(|c| c.axiom == axiom).ok_or(format!("no control for {axiom}"))?;
                ensure(c.detected, || format!("{name} class {k}: control for {axiom} not detected"))?;
            }
            count += 1;
        }
    }
    let elapsed = t.elapsed();
    within(elapsed, 60.0)?;
    Ok(format!("{count} representatives, 6 checks and 6 controls each, {elapsed:.2?}"))
}

fn crit5() -> Verdict {
    let mut count = 0;
    for (name, pair) in gamma_pairs() {
        for (k, c) in classes(&pair).iter().enumerate() {
            let r = theta_report(&pair, c);
            ensure(r.factorizes.passed && r.multiplicative.passed && r.pointwise.passed, || {
                format!("{name} class {k}: {r:?}")
            })?;
            let mut bad = c.clone();
            bad.u[pair.n2() + 1] += Phase::new(1, 3);
            ensure(!is_cocycle(&pair, &bad).is_empty(), || format!("{name}: perturbation is still a cocycle"))?;
            let r = theta_report(&pair, &bad);
            ensure(!r.multiplicative.passed && !r.pointwise.passed, || {
                format!("{name} class {k}: non-cocycle accepted")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} representatives multiplicative, perturbed (U,V) rejected"))
}

fn crit6() -> Verdict {
    let mut count = 0;
    for (name, pair) in gamma_pairs() {
        let ctx = CohomologyContext::new(&pair);
        let reps = classes(&pair);
        for (k, c1) in reps.iter().enumerate() {
            let r: Vec<Phase> = (0..pair.n1() * pair.n2()).map(|x| Phase::new((x * x + 3 * k + 1) as i64, 7)).collect();
            let c2 = c1.add(&coboundary(&pair, &r));
            let witness = ctx
                .cohomologous(&pair, c1, &c2)
                .map_err(|e| e.to_string())?
                .ok_or(format!("{name} class {k}: no witness found"))?;
            let w1 = w_from_w_hat(&build_w_hat(&pair, c1));
            let w2 = w_from_w_hat(&build_w_hat(&pair, &c2));
            ensure(w1 != w2, || format!("{name} class {k}: coboundary left W unchanged"))?;
            let res = conjugates(&w1, &w2, &witness);
            ensure(res.passed, || format!("{name} class {k}: {:?}", res.witness))?;
            if let Some(other) = reps.get(k + 1) {
                ensure(ctx.cohomologous(&pair, c1, other).map_err(|e| e.to_string())?.is_none(), || {
                    format!("{name}: classes {k} and {} reported cohomologous", k + 1)
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} cohomologous pairs conjugate under their witness"))
}

fn cyclotomic_poly(n: usize) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        let q = cyclotomic_poly(d);
        let mut rem = p.clone();
        let mut quot = vec![0i64; rem.len() - q.len() + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + q.len() - 1];
            quot[i] = c;
            for (j, qj) in q.iter().enumerate() {
                rem[i + j] -= c * qj;
            }
        }
        assert!(rem.iter().all(|&x| x == 0));
        p = quot;
    }
    p
}

/// `ζ^j` for `j < n` in the basis `1, ζ, …, ζ^(φ-1)` of `ℚ(ζ_n)`.
fn power_table(n: usize) -> Vec<Vec<BigRational>> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    let mut table = Vec::with_capacity(n);
    for _ in 0..n {
        table.push(cur.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect());
        let top = cur[deg - 1];
        let mut next = vec![0i64; deg];
        for i in (1..deg).rev() {
            next[i] = cur[i - 1];
        }
        for i in 0..deg {
            next[i] -= top * phi[i];
        }
        cur = next;
    }
    table
}

/// Coefficients `c` with `Δ(π(δ_x)) = Σ c(y,z) π(δ_y)⊗π(δ_z)`, found by matching
/// supports; `None` if `Δ(π(δ_x))` is not such a combination.
fn decompose(qg: &FiniteQG, x: usize) -> Option<BTreeMap<(usize, usize), Phase>> {
    let n = qg.dim();
    let mut owner: HashMap<(usize, usize), (usize, Phase)> = HashMap::new();
    let mut support = vec![0usize; n];
    for y in 0..n {
        for (col, e) in qg.pi_of_basis(y).columns().iter().enumerate() {
            if let Some((row, p)) = e {
                assert!(owner.insert((col, *row), (y, *p)).is_none(), "supports overlap");
                support[y] += 1;
            }
        }
    }
    let delta = qg.delta_of_basis(x);
    let mut coeff: BTreeMap<(usize, usize), (Phase, usize)> = BTreeMap::new();
    for (col, e) in delta.columns().iter().enumerate() {
        let Some((row, p)) = e else { continue };
        let (y, py) = *owner.get(&(col / n, row / n))?;
        let (z, pz) = *owner.get(&(col % n, row % n))?;
        let c = *p - py - pz;
        let entry = coeff.entry((y, z)).or_insert((c, 0));
        if entry.0 != c {
            return None;
        }
        entry.1 += 1;
    }
    coeff
        .into_iter()
        .map(|((y, z), (c, count))| (count == support[y] * support[z]).then_some(((y, z), c)))
        .collect()
}

/// Rank of the rows over `ℚ` by incremental elimination.
fn rank(rows: impl IntoIterator<Item = Vec<BigRational>>) -> usize {
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for mut r in rows {
        for (pivot, b) in &basis {
            if !r[*pivot].is_zero() {
                let f = r[*pivot].clone();
                for (ri, bi) in r.iter_mut().zip(b) {
                    if !bi.is_zero() {
                        *ri -= &f * bi;
                    }
                }
            }
        }
        if let Some(p) = r.iter().position(|v| !v.is_zero()) {
            let inv = r[p].recip();
            for v in r.iter_mut() {
                *v *= &inv;
            }
            for (_, b) in basis.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for (bi, ri) in b.iter_mut().zip(&r) {
                        if !ri.is_zero() {
                            *bi -= &f * ri;
                        }
                    }
                }
            }
            basis.push((p, r));
        }
    }
    basis.len()
}

/// Solves `(ι⊗ψ)Δ(π(δ_x)) = ψ(π(δ_x))·1` for `ψ` with values in `ℚ(ζ_D)`.
/// Returns the `ℚ`-nullity, `φ(D)` and whether the counting weights solve it.
fn haar_oracle(qg: &FiniteQG) -> Result<(usize, usize), String> {
    let (n, n2) = (qg.dim(), qg.n2());
    let decomps: Vec<BTreeMap<(usize, usize), Phase>> = (0..n)
        .map(|x| decompose(qg, x).ok_or(format!("Δ(π(δ_{x})) is not in M⊗M")))
        .collect::<Result<_, _>>()?;
    let den = decomps.iter().flat_map(|m| m.values()).fold(1i64, |a, p| a.lcm(&p.den())) as usize;
    let powers = power_table(den);
    let deg = powers[0].len();
    let cols = n * deg;

    let mut rows: HashSet<Vec<BigRational>> = HashSet::new();
    for (x, dx) in decomps.iter().enumerate() {
        let mut by_y: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (&(y, z), c) in dx {
            by_y.entry(y).or_default().push((z, c.over(den as i64).unwrap().rem_euclid(den as i64) as usize));
        }
        for y in 0..n {
            let terms = by_y.remove(&y).unwrap_or_default();
            let mut eq = vec![vec![BigRational::zero(); cols]; deg];
            for (z, k) in terms {
                for i in 0..deg {
                    for (l, v) in powers[(i + k) % den].iter().enumerate() {
                        if !v.is_zero() {
                            eq[l][z * deg + i] += v;
                        }
                    }
                }
            }
            if y < n2 {
                for l in 0..deg {
                    eq[l][x * deg + l] -= BigRational::one();
                }
            }
            for r in eq {
                if r.iter().any(|v| !v.is_zero()) {
                    rows.insert(r);
                }
            }
        }
    }
    let mut rows: Vec<Vec<BigRational>> = rows.into_iter().collect();
    rows.sort();
    let haar: Vec<BigRational> = (0..cols)
        .map(|c| if c / deg < n2 && c % deg == 0 { BigRational::one() } else { BigRational::zero() })
        .collect();
    for r in &rows {
        let dot: BigRational = r.iter().zip(&haar).map(|(a, b)| a * b).sum();
        ensure(dot.is_zero(), || String::from("counting weights violate left invariance"))?;
    }
    let nullity = cols - rank(rows);
    Ok((nullity, deg))
}

fn crit7() -> Verdict {
    let mut count = 0;
    for spec in all_specs() {
        let FixtureSpec { name, .. } = spec;
        let pair = spec.pair();
        for (k, c) in classes(&pair).iter().enumerate() {
            let qg = FiniteQG::new(&pair, c).map_err(|e| e.to_string())?;
            let (nullity, deg) = haar_oracle(&qg).map_err(|e| format!("{name} class {k}: {e}"))?;
            ensure(nullity == deg, || format!("{name} class {k}: invariant functionals span {nullity}/{deg}"))?;
            let unit = qg.haar_of_unit();
            ensure(unit.0[0] == BigRational::from_integer(BigInt::from(pair.n2())) && unit.0[0].is_positive(), || {
                format!("{name}: φ(1) = {:?}", unit.0)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} algebras: invariant functional unique up to scale and equal to the counting formula"))
}

fn report_lines(rep: &ExampleReport, names: &[&str]) -> Result<Vec<String>, String> {
    names
        .iter()
        .map(|n| {
            let l = rep.line(n).ok_or(format!("{} has no line `{n}`", rep.example))?;
            ensure(l.passed, || format!("{n}: {:e} vs {:e}", l.value, l.threshold))?;
            Ok(format!("{:.1e}", l.value))
        })
        .collect()
}

const CLOSED: f64 = 1e-12;

fn crit8() -> Verdict {
    let t = Instant::now();
    let rep = axb_example_check(10_000, 2024);
    let elapsed = t.elapsed();
    ensure(rep.samples == 10_000, || format!("{} samples", rep.samples))?;
    let v = report_lines(
        &rep,
        &["P = |g/(s(g-1)+1)|", "∇ = |1/(s(g-1)+1)|", "δ_M = |(s(g-1)+1)/(gs)|", "self-duality u(β_s(g)) = α_u⁻¹(s)(u(g))"],
    )?;
    for n in ["P = |g/(s(g-1)+1)|", "∇ = |1/(s(g-1)+1)|", "δ_M = |(s(g-1)+1)/(gs)|"] {
        ensure(rep.line(n).unwrap().threshold <= CLOSED, || format!("{n}: tolerance looser than 1e-12"))?;
    }
    let kac = report_lines(&rep, &["max |ξ - 1| (not a Kac algebra)"])?;
    within(elapsed, 5.0)?;
    Ok(format!("max rel err P {} ∇ {} δ_M {}, self-duality {}, max |ξ-1| {} ({elapsed:.2?})", v[0], v[1], v[2], v[3], kac[0]))
}

fn crit9() -> Verdict {
    let t = Instant::now();
    let rep = sl2_example_check(10_000, 2024);
    let elapsed = t.elapsed();
    ensure(rep.samples == 10_000, || format!("{} samples", rep.samples))?;
    let names = ["P = a²/(a+bs)²", "∇̂ = a²/(a+bs)²", "∇ = 1/(a²(a+bs)²)", "δ_M = 1 (unimodular)", "δ_M̂ = (a+bs)⁴"];
    let v = report_lines(&rep, &names)?;
    for n in names {
        ensure(rep.line(n).unwrap().threshold <= CLOSED, || format!("{n}: tolerance looser than 1e-12"))?;
    }
    within(elapsed, 5.0)?;
    Ok(format!("max rel err δ_M {} δ_M̂ {} ({elapsed:.2?})", v[3], v[4]))
}

fn crit10() -> Verdict {
    let t = Instant::now();
    let (mut line, mut cross, mut ctrl) = (0.0f64, 0.0f64, f64::INFINITY);
    for n in -2..=2 {
        let cfg = CocycleCheckConfig { n, samples: 1000, line_points: 100, bank: 20, seed: 7, ..Default::default() };
        let rep = cocycle_example_check(&cfg);
        let names = [
            "full-line PV = ±λπ²/2",
            "cocycle residual mod 2π, λ = 4n/π, pole-crossing bank",
            "cocycle residual mod 2π, λ = 1, pole-crossing bank",
        ];
        report_lines(&rep, &names).map_err(|e| format!("n = {n}: {e}"))?;
        let l = rep.line(names[0]).unwrap();
        ensure(l.samples >= 100 && l.threshold <= 1e-6, || format!("n = {n}: line check {} samples", l.samples))?;
        let c = rep.line(names[1]).unwrap();
        ensure(c.samples >= 20 && c.threshold <= 1e-6, || format!("n = {n}: bank of {}", c.samples))?;
        let k = rep.line(names[2]).unwrap();
        ensure(k.threshold >= 1.0, || String::from("control threshold below 1"))?;
        line = line.max(l.value);
        cross = cross.max(c.value);
        ctrl = ctrl.min(k.value);
    }
    let elapsed = t.elapsed();
    within(elapsed, 120.0)?;
    Ok(format!(
        "PV err {line:.1e}, quantized residual {cross:.1e}, λ=1 residual {ctrl:.3} > 1 ({elapsed:.2?})"
    ))
}

fn crit11() -> Verdict {
    let cfg = CocycleCheckConfig { n: 1, samples: 1000, line_points: 1, bank: 1, seed: 11, ..Default::default() };
    let rep = cocycle_example_check(&cfg);
    let names = [
        "star1 residual, f_λ",
        "star1 residual, trivial B = ab",
        "star1 residual, trivial B = b²/a",
        "star1 residual, trivial B = log(a) cos(b)",
    ];
    let v = report_lines(&rep, &names)?;
    for n in names {
        let l = rep.line(n).unwrap();
        ensure(l.samples >= 1000 && l.threshold <= 1e-12, || format!("{n}: {} points", l.samples))?;
    }
    Ok(format!("max residual f_λ {}, trivial {} {} {}", v[0], v[1], v[2], v[3]))
}

fn crit12() -> Verdict {
    let mut worst = 0.0f64;
    for n in -2..=2 {
        let rep = infinitesimal_check(n);
        let names = [
            "ax+b: (X ▷ A)(r) = r(1-r)",
            "SL2: X ▷ A = -2x",
            "SL2: Y ▷ A = -x²",
            "(X_e ⊗ Y_e)[f_λ(φ_r)] = 0",
            "(Y_e ⊗ X_e)[f_λ(φ_r)] = λ",
        ];
        report_lines(&rep, &names).map_err(|e| format!("n = {n}: {e}"))?;
        for name in names {
            let l = rep.line(name).unwrap();
            ensure(l.threshold <= 1e-4, || format!("{name}: tolerance {}", l.threshold))?;
            worst = worst.max(l.value);
        }
    }
    Ok(format!("largest finite-difference error {worst:.1e}"))
}

fn main() {
    let tmp = tempfile::tempdir().expect("temp dir");
    let status = Command::new(env!("CARGO_BIN_EXE_bicross"))
        .current_dir(tmp.path())
        .args(["--fixtures", "."])
        .output()
        .expect("binary runs");
    assert!(status.status.success(), "fixture export failed");
    let dir = tmp.path();

    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        ("Kac-Paljutkin extension group", Box::new(|| crit1(dir))),
        ("Z/m swap family", Box::new(|| crit2(dir))),
        ("S4 pair", Box::new(|| crit3(dir))),
        ("pentagon and Hopf suite", Box::new(crit4)),
        ("Θ correspondence", Box::new(crit5)),
        ("cohomologous conjugacy", Box::new(crit6)),
        ("Haar formula oracle", Box::new(crit7)),
        ("ax+b example", Box::new(crit8)),
        ("SL2 example", Box::new(crit9)),
        ("PV quantization", Box::new(crit10)),
        ("functional equation", Box::new(crit11)),
        ("infinitesimal constants", Box::new(crit12)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err(String::from("panicked")));
        let secs = t.elapsed().as_secs_f64();
        match verdict {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.2} s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{secs:.2} s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
