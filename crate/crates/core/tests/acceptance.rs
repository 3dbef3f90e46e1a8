//! Acceptance checks, one line per criterion. Exits non-zero if any fails.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use projpair::abelian::{
    enumerate_abelian_groups, symplectic_decompose, FinAbGroup, SymplecticPairing,
};
use projpair::classify::{
    construct_row, enumerate_multi_orbit, enumerate_single_orbit, ClassificationRow, RowIngredients,
};
use projpair::construct::{xx_hat_pair, GlBlock, Generator, GroupSpec, IdentityComponent};
use projpair::cyclo::{CycMatrix, CycNum, Field, RootOfUnity};
use projpair::matrep::{character_matrix, scalar_stats, translation_matrix, Ambient, TensorShape};
use projpair::verify::{
    projective_centralizer, spec_equal, verify_dual_pair, FailureCode, PairingTable,
    VerificationReport,
};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

// ---------------------------------------------------------------- oracles

fn primes_of(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors (ascending, divisibility chain) of a product of
/// cyclic groups, via p-primary parts.
fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &o in orders {
        for (p, e) in primes_of(o) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (p, mut es) in by_prime {
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (k, e) in es.into_iter().enumerate() {
            out[k] *= p.pow(e);
        }
    }
    out.reverse();
    out
}

fn partitions(n: u32) -> u64 {
    fn go(n: u32, max: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|k| go(n - k, k)).sum()
    }
    go(n, n)
}

fn abelian_count(n: u64) -> u64 {
    primes_of(n).iter().map(|(_, e)| partitions(*e)).product()
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Ordered `(b, e, 𝓛, 𝓙, 𝓚)` with `b·e·|𝓛|·|𝓙|·|𝓚| = n`.
fn single_orbit_count(n: u64) -> u64 {
    let mut total = 0;
    for b in divisors(n) {
        for e in divisors(n / b) {
            let rest = n / b / e;
            for l in divisors(rest) {
                for j in divisors(rest / l) {
                    let k = rest / l / j;
                    total += abelian_count(l) * abelian_count(j) * abelian_count(k);
                }
            }
        }
    }
    total
}

fn elements(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &o in orders {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (0..o).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn lex_index(orders: &[u64], c: &[u64]) -> usize {
    orders.iter().zip(c).fold(0, |acc, (o, x)| acc * *o as usize + *x as usize)
}

fn add(orders: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    orders.iter().zip(a.iter().zip(b)).map(|(o, (x, y))| (x + y) % o).collect()
}

/// Phase of a root of unity as a fraction `e/o` reduced mod 1, compared as
/// `(numerator·L/o) mod L` for a common `L`.
fn phase(r: &RootOfUnity, l: u64) -> u64 {
    assert_eq!(l % r.order(), 0);
    r.exp() * (l / r.order()) % l
}

/// Nondegenerate bicharacter check on a pairing table, indexed by the
/// lexicographic coset order of each side.
fn table_is_nondegenerate_bicharacter(t: &PairingTable) -> bool {
    let (dg, dd) = (t.gamma.factors().to_vec(), t.delta.factors().to_vec());
    let (eg, ed) = (elements(&dg), elements(&dd));
    if t.values.len() != eg.len() || t.values.iter().any(|r| r.len() != ed.len()) {
        return false;
    }
    let l = t
        .values
        .iter()
        .flatten()
        .fold(1u64, |a, r| num_integer::lcm(a, r.order()));
    let v = |a: &[u64], b: &[u64]| phase(&t.values[lex_index(&dg, a)][lex_index(&dd, b)], l);
    for a in &eg {
        for a2 in &eg {
            for b in &ed {
                if v(&add(&dg, a, a2), b) != (v(a, b) + v(a2, b)) % l {
                    return false;
                }
            }
        }
    }
    for b in &ed {
        for b2 in &ed {
            for a in &eg {
                if v(a, &add(&dd, b, b2)) != (v(a, b) + v(a, b2)) % l {
                    return false;
                }
            }
        }
    }
    let left = eg.iter().skip(1).all(|a| ed.iter().any(|b| v(a, b) != 0));
    let right = ed.iter().skip(1).all(|b| eg.iter().any(|a| v(a, b) != 0));
    eg.len() == ed.len() && left && right
}

// ---------------------------------------------------------------- criteria

fn criterion_1(reports: &mut Vec<VerificationReport>) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let groups: [&[u64]; 6] = [&[2], &[3], &[4], &[2, 2], &[5], &[6]];
    for orders in groups {
        let x = FinAbGroup::from_cyclic_orders(orders);
        let want = x.order() * x.order();
        let ok = match xx_hat_pair(&x) {
            Ok((g, h)) => match verify_dual_pair(&g, &h) {
                Ok(r) => {
                    let ok = r.is_dual_pair
                        && g.component_group.order() == want
                        && h.component_group.order() == want
                        && r.g_components as u64 == want
                        && r.h_components as u64 == want;
                    reports.push(r);
                    ok
                }
                Err(_) => false,
            },
            Err(_) => false,
        };
        if !ok {
            bad.push(x.to_string());
        }
    }
    let took = start.elapsed();
    let pass = bad.is_empty() && took < Duration::from_secs(10);
    Outcome::new(
        pass,
        format!("6 groups, failures {bad:?}, {} (limit 10s)", secs(took)),
    )
}

fn criterion_2() -> Outcome {
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for n in 1..=12u64 {
        for x_group in enumerate_abelian_groups(n) {
            let d = x_group.factors().to_vec();
            let exp = d.iter().fold(1u64, |a, o| num_integer::lcm(a, *o));
            for x in x_group.elements() {
                let tau = translation_matrix(&x_group, &x).unwrap();
                let tau_inv = tau.inverse().unwrap();
                for xi in x_group.characters() {
                    let sigma = character_matrix(&x_group, &xi).unwrap();
                    let sigma_inv = sigma.inverse().unwrap();
                    // ξ(x) = exp(2πi Σ ξ_i x_i / d_i)
                    let e: u64 = d
                        .iter()
                        .zip(xi.coords().iter().zip(x.coords()))
                        .map(|(o, (a, b))| a * b % o * (exp / o))
                        .sum::<u64>()
                        % exp;
                    let val = CycNum::root_of_unity(exp as u32, e as i64).unwrap();
                    let val_inv = CycNum::root_of_unity(exp as u32, -(e as i64)).unwrap();
                    let lhs1 = sigma.mul(&tau).unwrap().mul(&sigma_inv).unwrap();
                    let rhs1 = tau.scale(&val).unwrap();
                    let lhs2 = tau.mul(&sigma).unwrap().mul(&tau_inv).unwrap();
                    let rhs2 = sigma.scale(&val_inv).unwrap();
                    let ok = lhs1.sub(&rhs1).unwrap().is_zero() && lhs2.sub(&rhs2).unwrap().is_zero();
                    if !ok {
                        bad.push(format!("{x_group} x={:?} xi={:?}", x.coords(), xi.coords()));
                    }
                    checked += 1;
                }
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{checked} (x, xi) pairs over all groups of order <= 12, {} failures", bad.len()),
    )
}

struct RowResult {
    passed: bool,
    problem: Option<String>,
    report: Option<VerificationReport>,
}

fn run_row(row: &ClassificationRow) -> RowResult {
    let fail = |m: String| RowResult {
        passed: false,
        problem: Some(m),
        report: None,
    };
    let (g, h) = match construct_row(row) {
        Ok(p) => p,
        Err(e) => return fail(format!("construction: {e}")),
    };
    let report = match verify_dual_pair(&g, &h) {
        Ok(r) => r,
        Err(e) => return fail(format!("verification error: {e}")),
    };
    let mut problem = None;
    if !report.is_dual_pair {
        problem = Some(format!("{:?}", report.failures.iter().map(|f| f.code).collect::<Vec<_>>()));
    } else if g.component_group != row.gamma || h.component_group != row.gamma_hat {
        problem = Some("component groups differ from the row".into());
    }
    RowResult {
        passed: problem.is_none(),
        problem,
        report: Some(report),
    }
}

/// Criteria 3 and 4 share one pass over the rows.
fn criteria_3_and_4(extra: &[VerificationReport]) -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut all_pass = true;
    let mut pairing_bad = Vec::new();
    let mut gamma_bad = Vec::new();
    let mut verified = 0usize;
    for n in 1..=8usize {
        let t = Instant::now();
        let rows = match enumerate_multi_orbit(n, 4) {
            Ok(r) => r,
            Err(e) => {
                all_pass = false;
                lines.push(format!("n={n}: enumeration failed: {e}"));
                continue;
            }
        };
        let results: Vec<RowResult> = rows.par_iter().map(run_row).collect();
        let passed = results.iter().filter(|r| r.passed).count();
        let multi = rows.iter().filter(|r| r.parts > 1).count();
        all_pass &= passed == rows.len();
        lines.push(format!(
            "n={n}: {passed}/{} ({multi} multi-orbit) in {}",
            rows.len(),
            secs(t.elapsed())
        ));
        for (i, (row, res)) in rows.iter().zip(&results).enumerate() {
            if let Some(p) = &res.problem {
                if lines.len() < 40 {
                    lines.push(format!("  n={n} row {i}: {p}"));
                }
            }
            let Some(r) = &res.report else { continue };
            if !r.is_dual_pair {
                continue;
            }
            verified += 1;
            let ok = r.g_components == r.h_components
                && r.pairing.as_ref().is_some_and(table_is_nondegenerate_bicharacter);
            if !ok {
                pairing_bad.push(format!("n={n} row {i}"));
            }
            if let RowIngredients::Single(s) = &row.ingredients {
                let orders = [
                    s.l_group.factors(),
                    s.l_group.factors(),
                    s.j_group.factors(),
                    s.k_group.factors(),
                ]
                .concat();
                let want = invariant_factors(&orders);
                if row.gamma.factors() != want.as_slice()
                    || r.pairing.as_ref().map(|t| t.gamma.factors().to_vec()) != Some(want)
                {
                    gamma_bad.push(format!("n={n} row {i}"));
                }
            }
        }
    }
    for r in extra {
        verified += 1;
        let ok = r.g_components == r.h_components
            && r.pairing.as_ref().is_some_and(table_is_nondegenerate_bicharacter);
        if !ok {
            pairing_bad.push("Heisenberg pair".into());
        }
    }
    let took = start.elapsed();
    for l in &lines {
        println!("    {l}");
    }
    let c3 = Outcome::new(
        all_pass && took < Duration::from_secs(15 * 60),
        format!("n = 1..8, max_parts 4, {} total (limit 15 min)", secs(took)),
    );
    let c4 = Outcome::new(
        pairing_bad.is_empty() && gamma_bad.is_empty() && verified > 0,
        format!(
            "{verified} verified pairs, {} bad pairing tables, {} non-canonical single-orbit Gamma",
            pairing_bad.len(),
            gamma_bad.len()
        ),
    );
    (c3, c4)
}

fn criterion_5() -> Outcome {
    let s = scalar_stats();
    Outcome::new(
        s.failed_root_check == 0 && s.computed > 0,
        format!("{} commutator scalars, {} with c^n != 1", s.computed, s.failed_root_check),
    )
}

fn random_alternating(rng: &mut ChaCha8Rng, group: &FinAbGroup) -> SymplecticPairing {
    let d = group.factors();
    let r = d.len();
    let mut table = vec![vec![RootOfUnity::ONE; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let g = num_integer::gcd(d[i], d[j]);
            let v = RootOfUnity::new(g, rng.gen_range(0..g) as i64);
            table[i][j] = v;
            table[j][i] = v.inv();
        }
    }
    SymplecticPairing::new(group.clone(), table).expect("entries divide gcds")
}

/// `ω(x, y)` as a phase over `l`, straight from the table.
fn eval_phase(p: &SymplecticPairing, l: u64, x: &[u64], y: &[u64]) -> u64 {
    let mut acc = 0u64;
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            acc = (acc + phase(&p.table[i][j], l) * (xi * yj % l)) % l;
        }
    }
    acc
}

fn nondegenerate_oracle(p: &SymplecticPairing, l: u64) -> bool {
    let d = p.group.factors();
    let units: Vec<Vec<u64>> = (0..d.len())
        .map(|i| (0..d.len()).map(|k| u64::from(k == i)).collect())
        .collect();
    elements(d)
        .iter()
        .skip(1)
        .all(|w| units.iter().any(|u| eval_phase(p, l, w, u) != 0))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5359_4d50);
    let mut lagrangians = Vec::new();
    for n in 1..=8 {
        lagrangians.extend(enumerate_abelian_groups(n));
    }
    let mut cases = 0usize;
    let mut bad = Vec::new();
    let mut attempts = 0;
    while cases < 60 && attempts < 5000 {
        attempts += 1;
        let lag = &lagrangians[rng.gen_range(0..lagrangians.len())];
        let omega_orders = [lag.factors(), lag.factors()].concat();
        let group = FinAbGroup::new(invariant_factors(&omega_orders)).unwrap();
        assert!(group.order() <= 64);
        let pairing = random_alternating(&mut rng, &group);
        let l = group.exponent().max(1);
        if !nondegenerate_oracle(&pairing, l) {
            continue;
        }
        cases += 1;
        let d = group.factors().to_vec();
        let dec = match symplectic_decompose(&pairing) {
            Ok(dec) => dec,
            Err(e) => {
                bad.push(format!("{group}: {e}"));
                continue;
            }
        };
        // coordinates in the hyperbolic basis must biject onto Ω
        let basis_orders: Vec<u64> = dec.pairs.iter().flat_map(|p| [p.order, p.order]).collect();
        let mut coords_of: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
        for c in elements(&basis_orders) {
            let mut w = vec![0u64; d.len()];
            for (k, p) in dec.pairs.iter().enumerate() {
                for _ in 0..c[2 * k] {
                    w = add(&d, &w, &p.lambda);
                }
                for _ in 0..c[2 * k + 1] {
                    w = add(&d, &w, &p.lambda_prime);
                }
            }
            coords_of.insert(w, c);
        }
        let mut ok = coords_of.len() as u64 == group.order()
            && dec.lagrangian.order().pow(2) == group.order()
            && dec.pairs.iter().all(|p| p.value.order() == p.order);
        if ok {
            // hyperbolic form Π value_k^{a_k b'_k − b_k a'_k} reconstructs ω
            let all = elements(&d);
            'outer: for x in &all {
                let cx = &coords_of[x];
                for y in &all {
                    let cy = &coords_of[y];
                    let mut h = 0i128;
                    for (k, p) in dec.pairs.iter().enumerate() {
                        let v = phase(&p.value, l) as i128;
                        let det = cx[2 * k] as i128 * cy[2 * k + 1] as i128
                            - cx[2 * k + 1] as i128 * cy[2 * k] as i128;
                        h += v * det;
                    }
                    if h.rem_euclid(l as i128) as u64 != eval_phase(&pairing, l, x, y) {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if !ok {
            bad.push(format!("{group}"));
        }
    }
    Outcome::new(
        cases >= 50 && bad.is_empty(),
        format!("{cases} seeded nondegenerate alternating pairings, {} failures {bad:?}", bad.len()),
    )
}

fn swap_spec() -> GroupSpec {
    let q = Field::get(1).unwrap();
    GroupSpec {
        shape: Ambient::single(TensorShape::new([("X", 2)]).unwrap()),
        identity: IdentityComponent::Blocks(vec![GlBlock::scalar("c", vec![0, 1])]),
        component_group: FinAbGroup::cyclic(2),
        generators: vec![
            Generator {
                coset: vec![0],
                matrix: CycMatrix::identity_in(2, q),
            },
            Generator {
                coset: vec![1],
                matrix: CycMatrix::from_ints(2, 2, &[0, 1, 1, 0]),
            },
        ],
    }
}

/// The preimage of the cyclic subgroup generated by `gamma`.
fn restrict(spec: &GroupSpec, gamma: &[u64]) -> GroupSpec {
    let d = spec.component_group.factors().to_vec();
    let mut cur = vec![0u64; d.len()];
    let mut gens = Vec::new();
    loop {
        gens.push(spec.generators[lex_index(&d, &cur)].matrix.clone());
        cur = add(&d, &cur, gamma);
        if cur.iter().all(|x| *x == 0) {
            break;
        }
    }
    let m = gens.len() as u64;
    GroupSpec {
        shape: spec.shape.clone(),
        identity: spec.identity.clone(),
        component_group: FinAbGroup::cyclic(m),
        generators: gens
            .into_iter()
            .enumerate()
            .map(|(k, matrix)| Generator {
                coset: if m > 1 { vec![k as u64] } else { vec![] },
                matrix,
            })
            .collect(),
    }
}

/// `⟨diag(1, ζ_m, ζ_m^{a_2}, …)⟩` with scalar identity component.
fn cyclic_diagonal(m: u64, exps: &[i64]) -> GroupSpec {
    let n = exps.len();
    let diag: Vec<CycNum> = exps
        .iter()
        .map(|a| CycNum::root_of_unity(m as u32, *a).unwrap())
        .collect();
    let g = CycMatrix::diagonal(diag).unwrap();
    let q = Field::get(1).unwrap();
    let mut cur = CycMatrix::identity_in(n, q);
    let mut gens = Vec::new();
    for k in 0..m {
        gens.push(Generator {
            coset: vec![k],
            matrix: cur.clone(),
        });
        cur = cur.mul(&g).unwrap();
    }
    GroupSpec {
        shape: Ambient::single(TensorShape::new([("X", n)]).unwrap()),
        identity: IdentityComponent::Blocks(vec![GlBlock::scalar("c", (0..n).collect())]),
        component_group: FinAbGroup::cyclic(m),
        generators: gens,
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7472_6970);
    let rows: Vec<ClassificationRow> = (1..=6).flat_map(enumerate_single_orbit).collect();
    let mut specs: Vec<(String, GroupSpec)> = vec![("swap".into(), swap_spec())];
    while specs.len() < 10 {
        let i = rng.gen_range(0..rows.len());
        let (g, h) = construct_row(&rows[i]).unwrap();
        let pick = if rng.gen_bool(0.5) { g } else { h };
        specs.push((format!("row {i}"), pick));
    }
    let twisted: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].gamma.is_trivial()).collect();
    while specs.len() < 18 {
        let i = twisted[rng.gen_range(0..twisted.len())];
        let (g, _) = construct_row(&rows[i]).unwrap();
        let gamma: Vec<u64> = g
            .component_group
            .factors()
            .iter()
            .map(|o| rng.gen_range(0..*o))
            .collect();
        specs.push((format!("row {i} restricted to <{gamma:?}>"), restrict(&g, &gamma)));
    }
    while specs.len() < 24 {
        let m = rng.gen_range(2..=6u64);
        let n = rng.gen_range(2..=6usize);
        let mut exps = vec![0i64, 1];
        exps.extend((2..n).map(|_| rng.gen_range(0..m as i64)));
        specs.push((format!("<diag exps {exps:?} mod {m}>"), cyclic_diagonal(m, &exps)));
    }
    let mut bad = Vec::new();
    let mut non_dual = 0;
    for (name, s) in &specs {
        let result = (|| {
            let z1 = projective_centralizer(s)?;
            let z2 = projective_centralizer(&z1)?;
            let z3 = projective_centralizer(&z2)?;
            Ok::<_, projpair::verify::VerifyError>((spec_equal(&z3, &z1)?, spec_equal(&z2, s)?))
        })();
        match result {
            Ok((idem, is_double)) => {
                if !is_double {
                    non_dual += 1;
                }
                if !idem {
                    bad.push(name.clone());
                }
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    Outcome::new(
        bad.is_empty() && specs.len() >= 20 && non_dual > 0,
        format!(
            "{} seeded specs in PGL(n <= 6), {non_dual} not equal to their double centralizer, failures {bad:?}",
            specs.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let s = swap_spec();
    let larger = match verify_dual_pair(&s, &s) {
        Ok(r) => !r.is_dual_pair && r.has(FailureCode::CentralizerLarger),
        Err(_) => false,
    };
    let (klein, _) = xx_hat_pair(&FinAbGroup::cyclic(2)).unwrap();
    let (equal, shape) = match projective_centralizer(&s) {
        Ok(z) => {
            let dim = z.algebra().dim();
            (
                spec_equal(&z, &klein).unwrap_or(false),
                format!("identity dim {dim}, {} components", z.component_group.order()),
            )
        }
        Err(e) => (false, format!("error {e}")),
    };
    Outcome::new(
        larger && equal,
        format!(
            "CENTRALIZER_LARGER reported: {larger}; centralizer of <swap> has {shape}, equals the Klein-four spec: {equal}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=30u64 {
        let got = enumerate_single_orbit(n as usize).len() as u64;
        let want = single_orbit_count(n);
        if got != want {
            bad.push(format!("n={n}: {got} != {want}"));
        }
    }
    Outcome::new(bad.is_empty(), format!("n = 1..30, mismatches {bad:?}"))
}

/// Criterion numbers given on the command line restrict the run; 3 and 4
/// always run together.
fn main() {
    let only: HashSet<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let want = |n: usize| only.is_empty() || only.contains(&n);
    let mut heisenberg = Vec::new();
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut record = |n: usize, name: &'static str, o: Outcome| {
        println!("criterion {n} {} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((n, name, o));
    };
    if want(1) || want(4) {
        record(1, "Heisenberg self-duality", criterion_1(&mut heisenberg));
    }
    if want(2) {
        record(2, "commutation relation", criterion_2());
    }
    if want(3) || want(4) {
        let (c3, c4) = criteria_3_and_4(&heisenberg);
        record(3, "full pipeline", c3);
        record(4, "component-group duality", c4);
    }
    if want(6) {
        record(6, "symplectic decomposition", criterion_6());
    }
    if want(7) {
        record(7, "triple centralizer", criterion_7());
    }
    if want(8) {
        record(8, "negative control", criterion_8());
    }
    if want(9) {
        record(9, "enumeration cross-check", criterion_9());
    }
    if want(5) {
        record(5, "root-of-unity scalars", criterion_5());
    }

    results.sort_by_key(|r| r.0);
    println!();
    for (n, name, o) in &results {
        println!("criterion {n}: {} ({name})", if o.pass { "PASS" } else { "FAIL" });
    }
    if results.iter().any(|r| !r.2.pass) {
        std::process::exit(1);
    }
}
