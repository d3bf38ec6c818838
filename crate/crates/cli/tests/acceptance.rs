//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! fails. Oracles here are written independently of the library.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use twocx::interchange::to_json;
use twocx_core::chain::{
    homology, homology_table, smith_normal_form, verify_equivalence, verify_two_complex,
    AlgebraicTwoComplex, ChainComplex, EquivalenceCertificate, Homology, IntegerMatrix,
};
use twocx_core::fox::{cayley_complex, fox_derivative};
use twocx_core::group::{
    free_reduce, parse_presentation, todd_coxeter, GroupRingElement, GroupRingMatrix, GroupWord,
    Letter,
};
use twocx_core::realization::{
    build_a_prime, build_realizing_complex, extend_by_identity, verify_realization, StabilizationPlan,
};

const FOX_TIME: Duration = Duration::from_secs(1);
const CAYLEY_TIME: Duration = Duration::from_secs(5);
const ENUMERATION_TIME: Duration = Duration::from_secs(1);
const SNF_TIME: Duration = Duration::from_secs(5);
const REALIZATION_TIME: Duration = Duration::from_secs(10);

const S3: &str = "<x, y | x^2, y^3, x*y*x*y>";
const Q8: &str = "<x, y | x^2*y^-2, y^-1*x*y*x>";

fn corpus() -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = (2..=6).map(|n| (format!("<x | x^{n}>"), n)).collect();
    out.push((S3.to_string(), 6));
    out.push((Q8.to_string(), 8));
    out
}

fn cayley(text: &str) -> ChainComplex {
    let p = parse_presentation(text).unwrap();
    let t = todd_coxeter(&p, 4096).unwrap();
    cayley_complex(&p, &t).unwrap()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

// Free group ring oracle: words as signed generator numbers (+/-(g+1)).

type OracleWord = Vec<i32>;
type OracleElement = BTreeMap<OracleWord, i64>;

fn oracle_reduce(w: impl IntoIterator<Item = i32>) -> OracleWord {
    let mut out: OracleWord = Vec::new();
    for a in w {
        if out.last() == Some(&-a) {
            out.pop();
        } else {
            out.push(a);
        }
    }
    out
}

fn oracle_add(acc: &mut OracleElement, w: OracleWord, c: i64) {
    let e = acc.entry(w.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&w);
    }
}

fn oracle_mul(a: &OracleElement, b: &OracleElement) -> OracleElement {
    let mut out = OracleElement::new();
    for (u, c) in a {
        for (v, d) in b {
            oracle_add(&mut out, oracle_reduce(u.iter().chain(v).copied()), c * d);
        }
    }
    out
}

fn to_oracle_word(w: &GroupWord) -> OracleWord {
    w.letters()
        .iter()
        .map(|l| {
            let g = l.generator as i32 + 1;
            if l.inverse {
                -g
            } else {
                g
            }
        })
        .collect()
}

fn to_oracle(e: &GroupRingElement) -> OracleElement {
    let mut out = OracleElement::new();
    for (w, c) in e.symbolic_terms().unwrap() {
        oracle_add(&mut out, to_oracle_word(w), i64::try_from(c).unwrap());
    }
    out
}

fn criterion_fox() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let start = Instant::now();
    for k in 0..100 {
        let rank = 1 + k % 2;
        let len = rng.gen_range(0..=20);
        let w = free_reduce((0..len).map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5))));
        let mut sum = OracleElement::new();
        for i in 0..rank {
            let d = to_oracle(fox_derivative(&w, i, rank).unwrap().value());
            let mut x_minus_1 = OracleElement::new();
            oracle_add(&mut x_minus_1, vec![i as i32 + 1], 1);
            oracle_add(&mut x_minus_1, vec![], -1);
            for (u, c) in oracle_mul(&d, &x_minus_1) {
                oracle_add(&mut sum, u, c);
            }
        }
        let mut expected = OracleElement::new();
        oracle_add(&mut expected, to_oracle_word(&w), 1);
        oracle_add(&mut expected, vec![], -1);
        ensure(sum == expected, || format!("formula fails for word {:?}", to_oracle_word(&w)))?;
    }
    within(start.elapsed(), FOX_TIME, "100 words")?;
    Ok(format!("100 words in {:?}", start.elapsed()))
}

/// Rank over Q by fraction-free elimination.
fn rational_rank(m: &IntegerMatrix) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let (f, g) = (a[rank][c].clone(), a[r][c].clone());
                let pivot = a[rank].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot) {
                    *x = &*x * &f - p * &g;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn criterion_cayley() -> Outcome {
    let start = Instant::now();
    for (text, order) in corpus() {
        let c = cayley(&text);
        let report = verify_two_complex(&c).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{text}: {:?}", report.violations().first()))?;
        // Rational exactness as a cross-check: rank ∂1 = |G| - 1 and
        // rank ∂1 + rank ∂2 = dim C_1.
        let d1 = c.expanded_boundary(1).unwrap();
        let d2 = c.expanded_boundary(2).unwrap();
        ensure(d1.mul(&d2).is_zero(), || format!("{text}: expanded composite nonzero"))?;
        let (r1, r2) = (rational_rank(&d1), rational_rank(&d2));
        ensure(r1 == order - 1 && r1 + r2 == c.rank(1) * order, || format!("{text}: ranks {r1}, {r2}"))?;
    }
    within(start.elapsed(), CAYLEY_TIME, "corpus")?;
    Ok(format!("7 presentations in {:?}", start.elapsed()))
}

fn criterion_h2() -> Outcome {
    let mut seen = Vec::new();
    for n in 2..=6usize {
        let c = cayley(&format!("<x | x^{n}>"));
        // ∂3 = 0, so H2 = ker ∂2 is free of rank n - rank ∂2.
        let oracle = n - rational_rank(&c.expanded_boundary(2).unwrap());
        ensure(oracle == n - 1, || format!("oracle gives rank {oracle} for n = {n}"))?;
        let h2 = homology(&c, 2).map_err(|e| e.to_string())?;
        ensure(h2 == Homology::free(n - 1), || format!("n = {n}: H2 = {h2}"))?;
        seen.push(h2.to_string());
    }
    Ok(seen.join(", "))
}

type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&i| b[i]).collect()
}

fn invert(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j] = i;
    }
    out
}

fn closure_order(gens: &[Perm]) -> usize {
    let id: Perm = (0..gens[0].len()).collect();
    let mut seen = HashMap::from([(id.clone(), ())]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            for h in [g.clone(), invert(g)] {
                let q = compose(&p, &h);
                if seen.insert(q.clone(), ()).is_none() {
                    queue.push_back(q);
                }
            }
        }
    }
    seen.len()
}

fn quaternion_perms() -> Vec<Perm> {
    // 0..8 encode ±1, ±i, ±j, ±k as 2 * unit + (sign < 0).
    let unit_product = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, u) | (u, 0) => (false, u),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let right = |g: usize| -> Perm {
        (0..8)
            .map(|e| {
                let (neg, u) = unit_product(e / 2, g / 2);
                let sign = (e % 2 == 1) ^ (g % 2 == 1) ^ neg;
                2 * u + usize::from(sign)
            })
            .collect()
    };
    vec![right(2), right(4)]
}

fn oracle_generators(text: &str, n: usize) -> Vec<Perm> {
    match text {
        S3 => vec![vec![1, 0, 2], vec![1, 2, 0]],
        Q8 => quaternion_perms(),
        _ => vec![(0..n).map(|i| (i + 1) % n).collect()],
    }
}

fn criterion_todd_coxeter() -> Outcome {
    let mut orders = Vec::new();
    for (text, expected) in corpus() {
        let oracle = closure_order(&oracle_generators(&text, expected));
        ensure(oracle == expected, || format!("{text}: oracle order {oracle}"))?;
        let start = Instant::now();
        let t = todd_coxeter(&parse_presentation(&text).unwrap(), 4096).map_err(|e| e.to_string())?;
        within(start.elapsed(), ENUMERATION_TIME, &text)?;
        ensure(t.order() == oracle, || format!("{text}: order {} vs oracle {oracle}", t.order()))?;
        orders.push(t.order().to_string());
    }
    Ok(format!("orders {}", orders.join(", ")))
}

fn criterion_snf() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let start = Instant::now();
    for k in 0..500 {
        let (r, c) = (rng.gen_range(1..=30), rng.gen_range(1..=30));
        let values: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-10..=10)).collect();
        let a = IntegerMatrix::from_i64(r, c, &values);
        let s = smith_normal_form(&a);
        ensure(s.u.mul(&a).mul(&s.v) == s.d, || format!("matrix {k}: UAV != D"))?;
        ensure(s.u.determinant().abs() == BigInt::from(1), || format!("matrix {k}: U not unimodular"))?;
        ensure(s.v.determinant().abs() == BigInt::from(1), || format!("matrix {k}: V not unimodular"))?;
        let mut previous: Option<BigInt> = None;
        for i in 0..r {
            for j in 0..c {
                let x = s.d.get(i, j);
                ensure(i == j || x.is_zero(), || format!("matrix {k}: off-diagonal entry"))?;
            }
        }
        for i in 0..r.min(c) {
            let x = s.d.get(i, i).clone();
            if let Some(p) = &previous {
                let ok = if p.is_zero() { x.is_zero() } else { (&x % p).is_zero() };
                ensure(ok, || format!("matrix {k}: divisibility fails at {i}"))?;
            }
            ensure(!x.is_negative(), || format!("matrix {k}: negative diagonal"))?;
            previous = Some(x);
        }
    }
    within(start.elapsed(), SNF_TIME, "500 matrices")?;
    Ok(format!("500 matrices in {:?}", start.elapsed()))
}

fn mutate(e: &EquivalenceCertificate, rng: &mut StdRng) -> EquivalenceCertificate {
    let mut e = e.clone();
    let order = e.source().ring().table().unwrap().order();
    loop {
        let list: &mut Vec<GroupRingMatrix> = match rng.gen_range(0..4) {
            0 => &mut e.forward.maps,
            1 => &mut e.backward.maps,
            2 => &mut e.homotopy_source,
            _ => &mut e.homotopy_target,
        };
        let k = rng.gen_range(0..list.len());
        let m = &mut list[k];
        if m.rows() == 0 || m.cols() == 0 {
            continue;
        }
        let (r, c) = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.cols()));
        let coefficient = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
        let delta = GroupRingElement::from_elements([(BigInt::from(coefficient), rng.gen_range(0..order))]);
        let value = m.get(r, c).add(&delta).unwrap();
        m.set(r, c, value);
        return e;
    }
}

fn criterion_a_prime() -> Outcome {
    let mut certs = Vec::new();
    for (text, _) in corpus() {
        let a = AlgebraicTwoComplex::new(cayley(&text)).map_err(|e| e.to_string())?;
        for extra in 0..=5 {
            let (_, cert) = build_a_prime(&a, extra);
            let report = verify_equivalence(&cert).map_err(|e| e.to_string())?;
            ensure(report.passed(), || format!("{text}, extra rank {extra}: {:?}", report.first()))?;
            certs.push(cert);
        }
    }
    let mut rng = StdRng::seed_from_u64(6);
    let mut rejected = 0;
    for _ in 0..100 {
        let k = rng.gen_range(0..certs.len());
        let bad = mutate(&certs[k], &mut rng);
        if !verify_equivalence(&bad).map_err(|e| e.to_string())?.passed() {
            rejected += 1;
        }
    }
    ensure(rejected == 100, || format!("only {rejected}/100 mutations rejected"))?;
    Ok(format!("{} certificates verify, 100/100 mutations rejected", certs.len()))
}

fn criterion_realization() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (text, _) in corpus() {
        let start = Instant::now();
        let a = AlgebraicTwoComplex::new(cayley(&text)).map_err(|e| e.to_string())?;
        let plan = StabilizationPlan::new(a.clone(), a.clone(), 0).map_err(|e| e.to_string())?;
        let stable = EquivalenceCertificate::identity(plan.stable_source().complex());
        let e = extend_by_identity(&stable, 0).map_err(|e| e.to_string())?;
        let y = build_realizing_complex(&plan, &e).map_err(|e| format!("{text}: {e}"))?;
        let (a_prime, _) = build_a_prime(&a, plan.rank_s());
        let report = verify_realization(&a_prime, &y, &e).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{text}: {:?}", report.first()))?;
        let hy = homology_table(&y.complex).map_err(|e| e.to_string())?;
        let ha = homology_table(a.complex()).map_err(|e| e.to_string())?;
        ensure(hy[..3] == ha[..], || format!("{text}: homology differs"))?;
        ensure(hy[3].is_zero(), || format!("{text}: H3 = {}", hy[3]))?;
        let d2 = y.complex.boundary(2);
        for v in &y.attaching_vectors {
            let image = GroupRingMatrix::compose(y.complex.ring(), &d2, v).unwrap();
            ensure(image.is_zero(), || format!("{text}: attaching vector outside the kernel"))?;
        }
        within(start.elapsed(), REALIZATION_TIME, &text)?;
        slowest = slowest.max(start.elapsed());
    }
    Ok(format!("7 presentations, slowest {slowest:?}"))
}

fn criterion_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("twocx-acceptance-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    let path = |name: &str| -> PathBuf { dir.join(name) };

    fs::write(path("s3.txt"), S3).unwrap();
    let run = |args: &[String], out: &str| -> Result<(Vec<u8>, Vec<u8>), String> {
        let o = Command::new(env!("CARGO_BIN_EXE_twocx"))
            .args(args)
            .arg("--out")
            .arg(path(out))
            .output()
            .map_err(|e| e.to_string())?;
        let file = fs::read(path(out)).map_err(|e| format!("{args:?}: {e}"))?;
        Ok((file, o.stdout))
    };
    let s = |p: &str| path(p).display().to_string();

    // Inputs for the later commands come from the first.
    run(&["cayley".into(), s("s3.txt")], "s3.json")?;
    let (group, c) = {
        let text = fs::read_to_string(path("s3.json")).unwrap();
        twocx::interchange::read_complex(&text).map_err(|e| e.to_string())?
    };
    let a = AlgebraicTwoComplex::new(c).map_err(|e| e.to_string())?;
    let (_, cert) = build_a_prime(&a, 2);
    fs::write(path("cert.json"), to_json(&group.certificate_document(&cert))).unwrap();
    let plan = StabilizationPlan::new(a.clone(), a, 0).map_err(|e| e.to_string())?;
    let stable = EquivalenceCertificate::identity(plan.stable_source().complex());
    fs::write(path("stable.json"), to_json(&group.certificate_document(&stable))).unwrap();

    let commands: Vec<Vec<String>> = vec![
        vec!["cayley".into(), s("s3.txt")],
        vec!["verify".into(), s("s3.json")],
        vec!["homology".into(), s("s3.json")],
        vec!["homology".into(), s("s3.json"), "--degree".into(), "2".into()],
        vec!["cert-verify".into(), s("cert.json")],
        vec!["realize".into(), s("s3.txt"), s("s3.json"), s("stable.json")],
        vec!["realize".into(), s("s3.txt"), s("s3.json"), "--search".into(), "--extra-rank".into(), "1".into()],
    ];
    let mut count = 0;
    for args in &commands {
        for format in ["json", "text"] {
            let mut args = args.clone();
            args.extend(["--format".into(), format.into()]);
            let first = run(&args, "first.out")?;
            let second = run(&args, "second.out")?;
            ensure(first == second, || format!("{args:?} differs between runs"))?;
            count += 1;
        }
    }
    let _ = fs::remove_dir_all(&dir);
    Ok(format!("{count} command runs byte-identical"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 fox fundamental formula", criterion_fox),
        ("2 corpus Cayley complexes are algebraic 2-complexes", criterion_cayley),
        ("3 H2 of <x | x^n> is free of rank n-1", criterion_h2),
        ("4 Todd-Coxeter orders match permutation oracles", criterion_todd_coxeter),
        ("5 Smith normal form on 500 random matrices", criterion_snf),
        ("6 A' certificates verify and mutations are rejected", criterion_a_prime),
        ("7 realization round-trip", criterion_realization),
        ("8 CLI determinism", criterion_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
