use super::*;
use crate::field::TowerElement;
use crate::matrix::GMatrix;
use crate::summands::{materialize, table_samples};
use proptest::prelude::*;

fn g(s: &str) -> GaussianRational {
    s.parse().unwrap()
}

fn m(rows: &[&[&str]]) -> GMatrix {
    GMatrix::from_rows(rows.iter().map(|r| r.iter().map(|x| g(x)).collect()).collect()).unwrap()
}

fn texts(c: &CanonicalDecomposition) -> Vec<String> {
    c.summands.iter().map(ToString::to_string).collect()
}

#[test]
fn congruence_examples() {
    assert_eq!(texts(&canon_congruence(&m(&[&["1"]])).unwrap()), ["CM2(n=1, eps=1)"]);
    assert_eq!(texts(&canon_congruence(&m(&[&["0", "1"], &["-1", "0"]])).unwrap()), ["CM2(n=2, eps=0)"]);
    assert_eq!(texts(&canon_congruence(&m(&[&["0", "1"], &["2", "0"]])).unwrap()), ["CM1(n=2, lambda=1/2)"]);
    assert_eq!(texts(&canon_congruence(&m(&[&["0"]])).unwrap()), ["CM2(n=1, eps=0)"]);
    assert!(matches!(canon_congruence(&GMatrix::zeros(2, 3)), Err(Error::NotSquare(2, 3))));
}

#[test]
fn star_examples() {
    let c = canon_star_congruence(&m(&[&["1"]])).unwrap();
    assert_eq!(texts(&c), ["CMI2(n=1, mu=1, sign=?)"]);
    assert!(!c.notes().is_empty());
    assert_eq!(texts(&canon_star_congruence(&m(&[&["0", "1"], &["0", "0"]])).unwrap()), ["CMI1(n=2, lambda=0)"]);
    assert_eq!(texts(&canon_star_congruence(&m(&[&["0", "1"], &["2", "0"]])).unwrap()), ["CMI1(n=2, lambda=1/2)"]);
    // [i]: (A*, A) = ([-i], [i]) has eigenvalue -1, so mu^2 = -1
    assert_eq!(texts(&canon_star_congruence(&m(&[&["i"]])).unwrap()), ["CMI2(n=1, mu=i, sign=?)"]);
    // [1+2i]: nu = (1+2i)/(1-2i) = -3/5+4/5i, mu^2 = nu has no root in Q(i)
    assert!(matches!(canon_star_congruence(&m(&[&["1+2i"]])), Err(Error::EigenvalueOutsideField(_))));
}

#[test]
fn sym_sym_examples() {
    let c = canon_pair_sym_sym(&m(&[&["1"]]), &m(&[&["5"]]), SymForm::First).unwrap();
    assert_eq!(texts(&c), ["SS2N(n=1, lambda=5)"]);
    let c = canon_pair_sym_sym(&m(&[&["0", "1"], &["1", "0"]]), &m(&[&["1", "0"], &["0", "0"]]), SymForm::First).unwrap();
    assert_eq!(texts(&c), ["SSS1N(n=2, lambda=0, eps=1)"]);
    let c = canon_pair_sym_sym(&m(&[&["1"]]), &m(&[&["5"]]), SymForm::Second).unwrap();
    assert_eq!(texts(&c), ["LYG(n=1, lambda=5)"]);
    assert!(matches!(
        canon_pair_sym_sym(&m(&[&["0", "1"], &["0", "0"]]), &GMatrix::zeros(2, 2), SymForm::First),
        Err(Error::NotSymmetric)
    ));
}

#[test]
fn sym_skew_examples() {
    let c = canon_pair_sym_skew(&m(&[&["0", "1"], &["1", "0"]]), &m(&[&["0", "1"], &["-1", "0"]])).unwrap();
    assert_eq!(texts(&c), ["SC1(n=2, lambda=1)"]);
    assert_eq!(texts(&canon_pair_sym_skew(&m(&[&["1"]]), &m(&[&["0"]])).unwrap()), ["SC2(n=1, eps=1)"]);
    assert_eq!(texts(&canon_pair_sym_skew(&m(&[&["0"]]), &m(&[&["0"]])).unwrap()), ["SC2(n=1, eps=0)"]);
    let sym = m(&[&["1", "0"], &["0", "0"]]);
    assert!(matches!(canon_pair_sym_skew(&sym, &sym), Err(Error::NotSkew)));
}

#[test]
fn skew_skew_examples() {
    let m1 = m(&[&["0", "1"], &["-1", "0"]]);
    let c = canon_pair_skew_skew(&m1, &m(&[&["0", "7"], &["-7", "0"]])).unwrap();
    assert_eq!(texts(&c), ["CC1(n=2, lambda=7)"]);
    assert_eq!(texts(&canon_pair_skew_skew(&GMatrix::zeros(2, 2), &m1).unwrap()), ["CC23(n=2)"]);
    assert_eq!(texts(&canon_pair_skew_skew(&GMatrix::zeros(1, 1), &GMatrix::zeros(1, 1)).unwrap()), ["CC23(n=1)"]);
}

#[test]
fn hermitian_examples() {
    let c = canon_pair_hermitian(&m(&[&["0", "1"], &["1", "0"]]), &m(&[&["0", "i"], &["-i", "0"]])).unwrap();
    assert_eq!(texts(&c), ["HE1(n=2, mu=i)"]);
    assert!(c.notes().is_empty());
    let c = canon_pair_hermitian(&m(&[&["3/5"]]), &m(&[&["4/5"]])).unwrap();
    assert_eq!(texts(&c), ["HE2(n=1, c=4/3, sign=?)"]);
    let c = canon_pair_hermitian(&m(&[&["1"]]), &m(&[&["0"]])).unwrap();
    assert_eq!(texts(&c), ["HE2(n=1, c=0, sign=?)"]);
    assert!(matches!(canon_pair_hermitian(&m(&[&["i"]]), &m(&[&["0"]])), Err(Error::NotHermitian)));
}

#[test]
fn uncoverable_block_lists_are_reported() {
    let f = |l: &str, k| PencilBlock::finite(g(l), k);
    let lone = |b: PencilBlock| vec![b];
    assert!(matches!(match_congruence(&lone(f("2", 1))), Err(Error::MalformedPencil(_))));
    assert!(matches!(match_congruence(&lone(f("1", 2))), Err(Error::MalformedPencil(_))));
    assert!(matches!(match_congruence(&lone(f("-1", 1))), Err(Error::MalformedPencil(_))));
    assert!(matches!(match_congruence(&lone(PencilBlock::left(1))), Err(Error::MalformedPencil(_))));
    assert!(matches!(match_star(&lone(f("2", 1))), Err(Error::MalformedPencil(_))));
    assert!(matches!(match_sym_sym(&lone(PencilBlock::right(2)), SymForm::First), Err(Error::MalformedPencil(_))));
    assert!(matches!(match_sym_skew(&lone(f("2", 1))), Err(Error::PencilNotCompatible(_))));
    assert!(matches!(match_sym_skew(&lone(PencilBlock::infinite(3))), Err(Error::PencilNotCompatible(_))));
    assert!(matches!(match_sym_skew(&lone(f("0", 2))), Err(Error::PencilNotCompatible(_))));
    assert!(matches!(match_skew_skew(&lone(f("5", 1))), Err(Error::PencilNotCompatible(_))));
    assert!(matches!(match_hermitian(&lone(f("i", 1))), Err(Error::PencilNotCompatible(_))));
    // and the valid neighbours
    assert!(match_sym_skew(&[f("-2", 1), f("2", 1)]).is_ok());
    assert!(match_skew_skew(&[f("5", 1), f("5", 1)]).is_ok());
    assert!(match_hermitian(&[f("-i", 1), f("i", 1)]).is_ok());
    assert!(match_congruence(&[f("1", 2), f("1", 2)]).is_ok());
}

#[test]
fn verify_table_examples() {
    let d: SummandDescriptor = "CM1(n=2, lambda=2)".parse().unwrap();
    let check = check_table(&d).unwrap();
    assert!(check.passed());
    assert_eq!(check.computed, vec![PencilBlock::finite(g("1/2"), 1), PencilBlock::finite(g("2"), 1)]);
    let d: SummandDescriptor = "CMI2(n=3, mu=1)".parse().unwrap();
    assert_eq!(check_table(&d).unwrap().computed, vec![PencilBlock::finite(g("1"), 3)]);
    let d: SummandDescriptor = "SC3(n=4)".parse().unwrap();
    assert_eq!(check_table(&d).unwrap().computed, vec![PencilBlock::finite(g("0"), 2); 2]);
}

fn canon_materialized(d: &SummandDescriptor) -> CanonicalDecomposition {
    let input = match materialize::<TowerElement>(d).unwrap() {
        Summand::Matrix(a) => CanonInput::Matrix(a),
        Summand::Pair(a, b) => CanonInput::Pair(a, b),
    };
    canonicalize(relation_of(d.family), &input).unwrap_or_else(|e| panic!("{d}: {e}"))
}

/// Canonicalizing a materialized summand gives the summand back.
#[test]
fn idempotent_on_samples() {
    for d in table_samples(6) {
        let c = canon_materialized(&d);
        assert_eq!(c.summands.len(), 1, "{d}");
        assert!(c.summands[0].eq_up_to_sign(&d), "{d} -> {}", c.summands[0]);
        if relation_of(d.family).is_star() {
            continue;
        }
        assert_eq!(c.summands[0], d);
    }
}

/// Distinct summands of one relation have distinct block patterns, so the
/// order in which rows are matched cannot matter.
#[test]
fn table_rows_are_disjoint() {
    let samples = table_samples(8);
    for (i, a) in samples.iter().enumerate() {
        for b in &samples[i + 1..] {
            // a sign flip is the one ambiguity the pencil cannot see
            if relation_of(a.family) != relation_of(b.family) || a.with_unknown_sign() == b.with_unknown_sign() {
                continue;
            }
            assert_ne!(a.predicted_blocks(), b.predicted_blocks(), "{a} vs {b}");
        }
    }
}

#[test]
fn sym_skew_sum_gives_congruence_summand() {
    for d in table_samples(8).into_iter().filter(|d| relation_of(d.family) == Relation::SymSkew) {
        let Summand::Pair(b, c) = materialize::<GaussianRational>(&d).unwrap() else { unreachable!() };
        let a = b.add(&c);
        let got = canon_congruence(&a).unwrap();
        let want = sym_skew_to_congruence(&d).unwrap();
        assert_eq!(got.summands, vec![want.clone()], "{d}");
        assert_eq!(got.blocks, want.predicted_blocks());
        assert_eq!((a.transpose(), a.clone()), (b.sub(&c), b.add(&c)));
    }
}

#[test]
fn cm2_with_eps_one_has_unipotent_pencil() {
    for n in 1..=8 {
        let d = SummandDescriptor::cm2(n, 1).unwrap();
        let want = if n % 2 == 1 { "1" } else { "-1" };
        assert_eq!(d.predicted_blocks(), vec![PencilBlock::finite(g(want), n)]);
        assert!(verify_table(&d).unwrap());
    }
}

#[test]
fn cartesian_split_matches_hermitian_dictionary() {
    assert_eq!(mu_from_lambda(MuMap::Hermitian, &g("3")).unwrap(), g("1/2i"));
    for d in table_samples(6).into_iter().filter(|d| relation_of(d.family) == Relation::Star) {
        let Summand::Matrix(a) = materialize::<GaussianRational>(&d).unwrap() else { unreachable!() };
        let (b, c) = crate::summands::cartesian_split(&a).unwrap();
        let got = canon_pair_hermitian(&b, &c).unwrap();
        let want = star_to_hermitian(&d).unwrap();
        assert_eq!(got.summands.len(), 1, "{d}");
        assert!(got.summands[0].eq_up_to_sign(&want), "{d}: {} vs {want}", got.summands[0]);
    }
}

fn transform_input(input: &CanonInput<GaussianRational>, s: &GMatrix, star: bool) -> CanonInput<GaussianRational> {
    let st = if star { s.conjugate_transpose() } else { s.transpose() };
    match input {
        CanonInput::Matrix(a) => CanonInput::Matrix(st.mul(a).mul(s)),
        CanonInput::Pair(a, b) => CanonInput::Pair(st.mul(a).mul(s), st.mul(b).mul(s)),
    }
}

fn arb_invertible(n: usize) -> impl Strategy<Value = GMatrix> {
    proptest::collection::vec((-2i64..=2, -2i64..=2), n * n)
        .prop_map(move |v| {
            GMatrix::new(n, n, v.into_iter().map(|(a, b)| GaussianRational::from_parts(a, 1, b, 1)).collect()).unwrap()
        })
        .prop_filter("invertible", |m| m.is_invertible())
}

fn gaussian_samples(rel: Relation) -> Vec<SummandDescriptor> {
    table_samples(3)
        .into_iter()
        .filter(|d| relation_of(d.family) == rel && materialize::<GaussianRational>(d).is_ok())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Canonical forms are invariant under the group action.
    #[test]
    fn invariant_under_action(
        rel_idx in 0usize..7,
        picks in proptest::collection::vec(0usize..1000, 1..=3),
        s in arb_invertible(6),
    ) {
        let rel = [Relation::Congruence, Relation::Star, Relation::SymSym, Relation::SymSkew,
                   Relation::SkewSkew, Relation::HermHerm, Relation::Congruence][rel_idx];
        let pool = gaussian_samples(rel);
        let ds: Vec<SummandDescriptor> = picks.iter().map(|&i| pool[i % pool.len()].clone()).collect();
        let n: usize = ds.iter().map(|d| d.n).sum();
        let input = match materialize_all::<GaussianRational>(&ds).unwrap() {
            Summand::Matrix(a) => CanonInput::Matrix(a),
            Summand::Pair(a, b) => CanonInput::Pair(a, b),
        };
        let s = s.submatrix(0, 0, n.min(6), n.min(6));
        prop_assume!(n <= 6 && s.is_invertible());
        let before = canonicalize(rel, &input).unwrap();
        let after = canonicalize(rel, &transform_input(&input, &s, rel.is_star())).unwrap();
        prop_assert_eq!(before.size(), n);
        if rel.is_star() {
            prop_assert!(before.eq_up_to_sign(&after));
        } else {
            prop_assert_eq!(before, after);
        }
    }
}
