//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line.
//!
//! Randomized criteria use a ChaCha generator seeded from `CANON_SEED`
//! (default 20240611).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tricanon::canon::{
    canon_congruence, canon_pair_hermitian, canonicalize, check_table, relation_of, star_to_hermitian,
    sym_skew_to_congruence, CanonInput, Relation,
};
use tricanon::field::{GaussianRational, Scalar, TowerElement};
use tricanon::matrix::{build_jordan, build_m, ExactMatrix, GMatrix, Sign};
use tricanon::pencil::{kronecker_decompose, PencilBlock};
use tricanon::summands::{
    build_n, cartesian_split, materialize, materialize_all, mu_from_lambda, p_transform, p_transform_orders,
    table_samples, CParam, Family, MuMap, SignTag, Summand, SummandDescriptor,
};
use tricanon::witness::{matrix_sqrt_poly, upgrade_to_congruence};
use tricanon::Error;

fn g(s: &str) -> GaussianRational {
    s.parse().unwrap()
}

fn seed() -> u64 {
    std::env::var("CANON_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240611)
}

/// Fail the current criterion with a message.
macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

type Outcome = Result<String, String>;

// ---------------------------------------------------------------- 1

fn criterion_tables() -> Outcome {
    let samples = table_samples(9);
    for d in &samples {
        let check = check_table(d).map_err(|e| format!("{d}: {e}"))?;
        check!(check.passed(), "{d}: predicted {:?}, computed {:?}", check.predicted, check.computed);
    }
    let families = Family::ALL.iter().filter(|f| samples.iter().any(|d| d.family == **f)).count();
    check!(families == 17, "only {families} families sampled");
    Ok(format!("{} summands, 17 families, sizes <= 9", samples.len()))
}

// ---------------------------------------------------------------- 2

fn small_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    let a = rng.gen_range(-3..=3);
    let b = rng.gen_range(1..=3);
    let c = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(-3..=3) };
    let d = rng.gen_range(1..=3);
    GaussianRational::from_parts(a, b, c, d)
}

const UNITS: [&str; 8] = ["1", "-1", "i", "-i", "3/5+4/5i", "-3/5+4/5i", "5/13-12/13i", "-4/5-3/5i"];
const PYTHAGOREAN_C: [&str; 7] = ["0", "3/4", "-4/3", "5/12", "-12/5", "8/15", "1/0"];

fn random_descriptor(rng: &mut ChaCha8Rng, rel: Relation, n: usize) -> Option<SummandDescriptor> {
    use Family::*;
    let families: &[Family] = match rel {
        Relation::Congruence => &[CM1, CM2, CM3],
        Relation::Star => &[CMI1, CMI2],
        Relation::SymSym => &[SSS1N, SS2N],
        Relation::SymSymSecond => &[LYG, NN_IDENT, SSNEW],
        Relation::SymSkew => &[SC1, SC2, SC3],
        Relation::SkewSkew => &[CC1, CC23],
        Relation::HermHerm => &[HE1, HE2],
    };
    let family = *families.choose(rng).unwrap();
    let lambda = Some(small_gaussian(rng));
    let eps = Some(rng.gen_range(0..=1u8));
    let sign = if rng.gen_bool(0.5) { SignTag::Plus } else { SignTag::Minus };
    let d = match family {
        CM1 | CMI1 | SS2N | LYG | SC1 | CC1 => SummandDescriptor::new(family, n, lambda, None, None, None, SignTag::Plus),
        CM2 | SC2 => SummandDescriptor::new(family, n, None, eps, None, None, SignTag::Plus),
        SSS1N => {
            if n % 2 == 0 {
                SummandDescriptor::sss1n(n, None, lambda)
            } else {
                SummandDescriptor::sss1n(n, eps, None)
            }
        }
        CMI2 => SummandDescriptor::cmi2(n, g(UNITS.choose(rng).unwrap()), sign),
        HE1 => {
            let mu = if n % 2 == 1 { GaussianRational::i() } else { small_gaussian(rng) };
            SummandDescriptor::he1(n, mu, SignTag::Plus)
        }
        HE2 => {
            let c = match *PYTHAGOREAN_C.choose(rng).unwrap() {
                "1/0" => CParam::Infinite,
                s => CParam::Finite(tricanon::field::parse_rational(s).unwrap()),
            };
            SummandDescriptor::he2(n, c, sign)
        }
        _ => SummandDescriptor::new(family, n, None, None, None, None, SignTag::Plus),
    };
    d.ok()
}

fn random_sum(rng: &mut ChaCha8Rng, rel: Relation, max_total: usize, domain_ok: impl Fn(&SummandDescriptor) -> bool) -> Vec<SummandDescriptor> {
    let count = rng.gen_range(1..=4);
    let mut out = Vec::new();
    let mut total = 0;
    while out.len() < count {
        let room = max_total - total;
        if room == 0 {
            break;
        }
        let n = rng.gen_range(1..=room.min(6));
        if let Some(d) = random_descriptor(rng, rel, n) {
            if domain_ok(&d) {
                total += n;
                out.push(d);
            }
        }
    }
    out
}

fn random_invertible<S: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> ExactMatrix<S> {
    loop {
        let m = ExactMatrix::from_fn(n, n, |_, _| {
            S::from_gaussian(&GaussianRational::from_parts(rng.gen_range(-2..=2), 1, rng.gen_range(-2..=2), 1))
        });
        if m.is_invertible() {
            return m;
        }
    }
}

fn as_input<S: Scalar>(s: Summand<S>) -> CanonInput<S> {
    match s {
        Summand::Matrix(a) => CanonInput::Matrix(a),
        Summand::Pair(a, b) => CanonInput::Pair(a, b),
    }
}

fn act<S: Scalar>(input: &CanonInput<S>, s: &ExactMatrix<S>, star: bool) -> CanonInput<S> {
    let st = if star { s.conjugate_transpose() } else { s.transpose() };
    match input {
        CanonInput::Matrix(a) => CanonInput::Matrix(st.mul(a).mul(s)),
        CanonInput::Pair(a, b) => CanonInput::Pair(st.mul(a).mul(s), st.mul(b).mul(s)),
    }
}

fn round_trip<S: Scalar>(rng: &mut ChaCha8Rng, rel: Relation, trials: usize, max_total: usize) -> Outcome {
    let start = Instant::now();
    for t in 0..trials {
        let ds = random_sum(rng, rel, max_total, |d| materialize::<S>(d).is_ok());
        let input = as_input(materialize_all::<S>(&ds).map_err(|e| e.to_string())?);
        let n: usize = ds.iter().map(|d| d.n).sum();
        let s = random_invertible::<S>(rng, n);
        let direct = canonicalize(rel, &input).map_err(|e| format!("trial {t} {ds:?}: {e}"))?;
        let moved = canonicalize(rel, &act(&input, &s, rel.is_star())).map_err(|e| format!("trial {t} {ds:?}: {e}"))?;
        check!(direct.size() == n, "trial {t}: sizes {} vs {n}", direct.size());
        let mut want = ds.clone();
        want.sort();
        if rel.is_star() {
            check!(direct.eq_up_to_sign(&moved), "trial {t}: {:?} vs {:?}", direct.summands, moved.summands);
            check!(tricanon::summands::multiset_eq_up_to_sign(&direct.summands, &want), "trial {t}: {:?} vs {want:?}", direct.summands);
        } else {
            check!(direct == moved, "trial {t}: {:?} vs {:?}", direct.summands, moved.summands);
            check!(direct.summands == want, "trial {t}: {:?} vs {want:?}", direct.summands);
        }
    }
    Ok(format!("{rel}: {trials} trials in {:.1}s", start.elapsed().as_secs_f64()))
}

fn criterion_round_trip(rng: &mut ChaCha8Rng) -> Outcome {
    let mut parts = Vec::new();
    for rel in [
        Relation::Congruence,
        Relation::Star,
        Relation::SymSym,
        Relation::SymSkew,
        Relation::SkewSkew,
        Relation::HermHerm,
    ] {
        parts.push(round_trip::<GaussianRational>(rng, rel, 100, 12)?);
    }
    // the second symmetric form needs the radical tower for N_n
    parts.push(round_trip::<TowerElement>(rng, Relation::SymSymSecond, 10, 6)?);
    Ok(parts.join("; "))
}

// ---------------------------------------------------------------- 3

const SPECTRUM: [&str; 4] = ["1", "4", "-4", "2i"];

/// Reversal matrix of size k.
fn sip(k: usize) -> GMatrix {
    GMatrix::from_fn(k, k, |i, j| if i + j + 1 == k { GaussianRational::from_int(1) } else { GaussianRational::default() })
}

/// `(A0, B0, M0)` with `A0 M0` and `B0 M0` of the same symmetry type as
/// `A0` and `B0`.
fn seeded_triple(rng: &mut ChaCha8Rng, skew: bool) -> (GMatrix, GMatrix, GMatrix) {
    let mut a0 = GMatrix::zeros(0, 0);
    let mut b0 = GMatrix::zeros(0, 0);
    let mut m0 = GMatrix::zeros(0, 0);
    for _ in 0..rng.gen_range(1..=3) {
        let k = rng.gen_range(1..=2);
        let lam = g(SPECTRUM.choose(rng).unwrap());
        let x = build_jordan(k, &lam).unwrap();
        let c = GaussianRational::from_int(rng.gen_range(-2..=2));
        let e = rng.gen_range(0..=1u32);
        if skew {
            let z = GMatrix::zeros(k, k);
            let y = x.transpose().pow(e).scale(&c);
            a0 = a0.direct_sum(&symplectic(k));
            b0 = b0.direct_sum(&z.hstack(&y).vstack(&y.transpose().neg().hstack(&z)));
            m0 = m0.direct_sum(&x.direct_sum(&x.transpose()));
        } else {
            let e_k = sip(k);
            a0 = a0.direct_sum(&e_k);
            b0 = b0.direct_sum(&e_k.mul(&x.pow(e)).scale(&c));
            m0 = m0.direct_sum(&x);
        }
    }
    (a0, b0, m0)
}

/// `[[0, I_k], [-I_k, 0]]`.
fn symplectic(k: usize) -> GMatrix {
    let z = GMatrix::zeros(k, k);
    let i = GMatrix::identity(k);
    z.hstack(&i).vstack(&i.neg().hstack(&z))
}

fn criterion_witness(rng: &mut ChaCha8Rng) -> Outcome {
    let mut counts = [0usize; 2];
    for t in 0..50 {
        let skew = t % 2 == 1;
        let (a0, b0, m0) = seeded_triple(rng, skew);
        let n = a0.rows();
        let u = random_invertible::<GaussianRational>(rng, n);
        let v = random_invertible::<GaussianRational>(rng, n);
        // (A, B) = U^T (A0, B0) U and (A', B') = V^T (A0 M0, B0 M0) V
        let a = u.transpose().mul(&a0).mul(&u);
        let b = u.transpose().mul(&b0).mul(&u);
        let a2 = v.transpose().mul(&a0.mul(&m0)).mul(&v);
        let b2 = v.transpose().mul(&b0.mul(&m0)).mul(&v);
        let uinv = u.inverse().unwrap();
        let r = uinv.mul(&v);
        let s = uinv.mul(&m0).mul(&v);
        let nn = upgrade_to_congruence(&a, &b, &a2, &b2, &r, &s).map_err(|e| format!("trial {t}: {e}"))?;
        check!(nn.transpose().mul(&a).mul(&nn) == a2, "trial {t}: N^T A N != A'");
        check!(nn.transpose().mul(&b).mul(&nn) == b2, "trial {t}: N^T B N != B'");
        let m = s.mul(&r.inverse().unwrap());
        let (_, fm) = matrix_sqrt_poly(&m).map_err(|e| format!("trial {t}: {e}"))?;
        check!(fm.mul(&fm) == m, "trial {t}: f(M)^2 != M");
        check!(a.mul(&fm) == fm.transpose().mul(&a), "trial {t}: A f(M) != f(M)^T A");
        counts[skew as usize] += 1;
    }
    Ok(format!("{} symmetric and {} skew pairs", counts[0], counts[1]))
}

// ---------------------------------------------------------------- 4

fn blocks(a: &GMatrix, b: &GMatrix) -> Result<Vec<PencilBlock>, String> {
    kronecker_decompose(a, b).map(|f| f.blocks).map_err(|e| e.to_string())
}

fn criterion_lemmas() -> Outcome {
    let mut cases = 0;
    for k in 0..=5usize {
        for sigma in [Sign::Plus, Sign::Minus] {
            for tau in [Sign::Plus, Sign::Minus] {
                let z1 = GMatrix::zeros(1, 1);
                let i1 = GMatrix::identity(1);
                let ms = build_m::<GaussianRational>(sigma, k);
                let mt = build_m::<GaussianRational>(tau, k);
                let got = blocks(&z1.direct_sum(&ms), &mt.direct_sum(&z1))?;
                check!(got == vec![PencilBlock::right(k), PencilBlock::left(k)], "(2) k={k}: {got:?}");
                let got = blocks(&i1.direct_sum(&ms), &mt.direct_sum(&z1))?;
                check!(got == vec![PencilBlock::finite(g("0"), 2 * k + 1)], "(3) k={k}: {got:?}");
                cases += 2;
                if k >= 1 {
                    let ms1 = build_m::<GaussianRational>(sigma, k - 1);
                    let got = blocks(&z1.direct_sum(&ms1).direct_sum(&z1), &mt)?;
                    check!(got == vec![PencilBlock::infinite(k); 2], "(4) k={k}: {got:?}");
                    let got = blocks(&i1.direct_sum(&ms1).direct_sum(&z1), &mt)?;
                    check!(got == vec![PencilBlock::infinite(2 * k)], "(5) k={k}: {got:?}");
                    cases += 2;
                }
            }
        }
    }
    for n in 1..=10 {
        let a = GMatrix::from_fn(n, n, |i, j| {
            if i == 0 && j == 0 {
                g("5")
            } else if i.abs_diff(j) == 1 {
                GaussianRational::from_parts((i + 2 * j) as i64 + 1, 1, i as i64 - 1, 1)
            } else {
                GaussianRational::default()
            }
        });
        let (rows, cols) = p_transform_orders(n);
        let explicit = GMatrix::permutation(&rows).unwrap().mul(&a).mul(&GMatrix::permutation(&cols).unwrap().transpose());
        check!(p_transform(&a).unwrap() == explicit, "p_transform n={n}");
        cases += 1;
    }
    // the transform preserves the pencil of every pair summand it applies to
    for d in table_samples(10) {
        let Ok(Summand::Pair(a, b)) = materialize::<GaussianRational>(&d) else { continue };
        let (Ok(pa), Ok(pb)) = (p_transform(&a), p_transform(&b)) else { continue };
        check!(blocks(&a, &b)? == blocks(&pa, &pb)?, "{d}: p_transform changed the pencil");
        cases += 1;
    }
    Ok(format!("{cases} cases"))
}

// ---------------------------------------------------------------- 5

fn criterion_n() -> Outcome {
    for n in 1..=8 {
        let m = build_n::<TowerElement>(n).map_err(|e| e.to_string())?;
        check!(m.is_tridiagonal(), "N_{n} not tridiagonal");
        check!(m.is_symmetric().unwrap(), "N_{n} not symmetric");
        check!(m.rank() == n - 1, "N_{n} has rank {}", m.rank());
        check!(m.pow(n as u32).is_zero(), "N_{n}^{n} != 0");
        check!(n == 1 || !m.pow(n as u32 - 1).is_zero(), "N_{n}^{} == 0", n - 1);
        let diag_ok = (0..n).all(|j| *m.get(j, j) == TowerElement::from_int(n as i64 - 1 - 2 * j as i64));
        check!(diag_ok, "N_{n} diagonal");
    }
    Ok("n = 1..8 over the radical tower".into())
}

// ---------------------------------------------------------------- 6

fn criterion_cross() -> Outcome {
    let mut count = 0;
    for d in table_samples(8).into_iter().filter(|d| relation_of(d.family) == Relation::SymSkew) {
        let Summand::Pair(b, c) = materialize::<GaussianRational>(&d).unwrap() else { unreachable!() };
        let a = b.add(&c);
        check!(a.transpose() == b.sub(&c), "{d}: A^T != B - C");
        let got = canon_congruence(&a).map_err(|e| format!("{d}: {e}"))?;
        let want = sym_skew_to_congruence(&d).map_err(|e| format!("{d}: {e}"))?;
        check!(got.summands == vec![want.clone()], "{d}: got {:?}, want {want}", got.summands);
        check!(got.blocks == want.predicted_blocks(), "{d}: pencil {:?}", got.blocks);
        count += 1;
    }
    for n in 1..=8 {
        let d = SummandDescriptor::cm2(n, 1).unwrap();
        let Summand::Matrix(a) = materialize::<GaussianRational>(&d).unwrap() else { unreachable!() };
        let want = if n % 2 == 1 { "1" } else { "-1" };
        check!(blocks(&a.transpose(), &a)? == vec![PencilBlock::finite(g(want), n)], "CM2(n={n}, eps=1)");
        count += 1;
    }
    check!(mu_from_lambda(MuMap::Hermitian, &g("3")).unwrap() == g("1/2i"), "lambda=3 does not give mu=i/2");
    check!(mu_from_lambda(MuMap::Congruence, &g("1")).unwrap() == g("0"), "mu=1 does not give lambda=0");
    for d in table_samples(6).into_iter().filter(|d| relation_of(d.family) == Relation::Star) {
        let Summand::Matrix(a) = materialize::<GaussianRational>(&d).unwrap() else { unreachable!() };
        let (b, c) = cartesian_split(&a).unwrap();
        let got = canon_pair_hermitian(&b, &c).map_err(|e| format!("{d}: {e}"))?;
        let want = star_to_hermitian(&d).map_err(|e| format!("{d}: {e}"))?;
        check!(got.summands.len() == 1 && got.summands[0].eq_up_to_sign(&want), "{d}: got {:?}, want {want}", got.summands);
        count += 1;
    }
    Ok(format!("{count} summands"))
}

// ---------------------------------------------------------------- 7

fn criterion_negative() -> Outcome {
    let a = GMatrix::from_ints(&[&[0, 1], &[3, 0]]);
    let c = canon_congruence(&a).map_err(|e| format!("[[0,1],[3,0]]: {e}"))?;
    check!(
        c.blocks == vec![PencilBlock::finite(g("1/3"), 1), PencilBlock::finite(g("3"), 1)],
        "[[0,1],[3,0]] blocks {:?}",
        c.blocks
    );
    // det(tI - K) = t^2 + 2
    let k = GMatrix::from_ints(&[&[0, -2], &[1, 0]]);
    let r = kronecker_decompose(&GMatrix::identity(2), &k);
    check!(matches!(r, Err(Error::EigenvalueOutsideField(_))), "t^2 + 2 pencil: {:?}", r.map(|f| f.blocks));
    // (A^T, A) with det(A - t A^T) = t^2 - t + 1
    let r = canon_congruence(&GMatrix::from_ints(&[&[1, 1], &[0, 1]]));
    check!(matches!(r, Err(Error::EigenvalueOutsideField(_))), "[[1,1],[0,1]]: {r:?}");
    let two = GMatrix::from_ints(&[&[2]]);
    let r = matrix_sqrt_poly(&two);
    check!(matches!(r, Err(Error::SqrtNotInField(_))), "M = [2]: {r:?}");
    let one = GMatrix::identity(1);
    let zero = GMatrix::zeros(1, 1);
    let r = upgrade_to_congruence(&one, &zero, &two, &zero, &one, &two);
    check!(matches!(r, Err(Error::SqrtNotInField(_))), "witness with M = [2]: {r:?}");
    Ok("outside-field and missing-square-root errors raised exactly where expected".into())
}

// ----------------------------------------------------------------

fn main() -> ExitCode {
    let seed = seed();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    println!("acceptance (CANON_SEED={seed})");
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Outcome + '_>)> = vec![
        ("table reproduction", Box::new(criterion_tables)),
        ("round-trip canonicalization", Box::new(|| criterion_round_trip(&mut rng))),
        ("congruence witness", Box::new(criterion_witness_wrapped(seed))),
        ("pencil lemmas and p_transform", Box::new(criterion_lemmas)),
        ("N_n properties", Box::new(criterion_n)),
        ("cross-relation consistency", Box::new(criterion_cross)),
        ("negative paths", Box::new(criterion_negative)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 7 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}

/// Criterion 3 draws from its own stream so its inputs do not depend on
/// how many draws criterion 2 made.
fn criterion_witness_wrapped(seed: u64) -> impl FnOnce() -> Outcome {
    move || criterion_witness(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed))
}
