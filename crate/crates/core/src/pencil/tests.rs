use super::*;
use crate::matrix::{build_m, GMatrix, Sign};
use proptest::prelude::*;

fn g(s: &str) -> GaussianRational {
    s.parse().unwrap()
}

fn decompose(a: &GMatrix, b: &GMatrix) -> Vec<PencilBlock> {
    let kf = kronecker_decompose(a, b).unwrap();
    assert!(kf.verify(a, b));
    kf.blocks
}

#[test]
fn scalar_pencil() {
    let a = GMatrix::from_ints(&[&[2]]);
    let b = GMatrix::from_ints(&[&[1]]);
    assert_eq!(decompose(&a, &b), vec![PencilBlock::finite(g("1/2"), 1)]);
    assert_eq!(PencilBlock::finite(g("1/2"), 1).to_string(), "FiniteEigen(1/2) size 1");
}

#[test]
fn canonical_singular_block() {
    let (f, gg) = build_fg::<GaussianRational>(1);
    assert_eq!(decompose(&f, &gg), vec![PencilBlock::right(1)]);
    let (f0, g0) = build_fg::<GaussianRational>(0);
    assert_eq!(decompose(&f0, &g0), vec![PencilBlock::right(0)]);
    assert_eq!(decompose(&f0.transpose(), &g0.transpose()), vec![PencilBlock::left(0)]);
}

#[test]
fn transpose_pair_example() {
    let b = GMatrix::from_ints(&[&[0, 1], &[2, 0]]);
    assert_eq!(
        decompose(&b.transpose(), &b),
        vec![PencilBlock::finite(g("1/2"), 1), PencilBlock::finite(g("2"), 1)]
    );
}

#[test]
fn zero_pencils() {
    let z = GMatrix::zeros(2, 3);
    let blocks = decompose(&z, &z);
    assert_eq!(blocks, vec![PencilBlock::right(0), PencilBlock::right(0), PencilBlock::right(0), PencilBlock::left(0), PencilBlock::left(0)]);
    assert!(decompose(&GMatrix::zeros(0, 0), &GMatrix::zeros(0, 0)).is_empty());
}

#[test]
fn outside_field() {
    let a = GMatrix::identity(2);
    let b = GMatrix::from_ints(&[&[0, 1], &[-2, 0]]);
    assert!(matches!(kronecker_decompose(&a, &b), Err(Error::EigenvalueOutsideField(_))));
}

#[test]
fn regular_eigenvalue_examples() {
    let j = crate::matrix::build_jordan(2, &g("3")).unwrap();
    assert_eq!(regular_eigenvalues(&j, &GMatrix::identity(2)).unwrap(), vec![(g("3"), 2)]);
    let m = GMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
    assert_eq!(regular_eigenvalues(&m, &GMatrix::identity(2)).unwrap(), vec![(g("-i"), 1), (g("i"), 1)]);
    let m2 = GMatrix::from_ints(&[&[0, 1], &[-2, 0]]);
    assert!(matches!(regular_eigenvalues(&m2, &GMatrix::identity(2)), Err(Error::EigenvalueOutsideField(_))));
    // det(tB - A) with a singular B: degree drops
    let a = GMatrix::from_ints(&[&[1, 0], &[0, 1]]);
    let b = GMatrix::from_ints(&[&[2, 0], &[0, 0]]);
    assert_eq!(regular_eigenvalues(&a, &b).unwrap(), vec![(g("1/2"), 1)]);
}

#[test]
fn lemma_2_4_equivalences() {
    for k in 0..=5usize {
        for sigma in [Sign::Plus, Sign::Minus] {
            for tau in [Sign::Plus, Sign::Minus] {
                let z1 = GMatrix::zeros(1, 1);
                let i1 = GMatrix::identity(1);
                let ms = build_m::<GaussianRational>(sigma, k);
                let mt = build_m::<GaussianRational>(tau, k);
                let lhs = decompose(&z1.direct_sum(&ms), &mt.direct_sum(&z1));
                assert_eq!(lhs, vec![PencilBlock::right(k), PencilBlock::left(k)]);
                let lhs = decompose(&i1.direct_sum(&ms), &mt.direct_sum(&z1));
                assert_eq!(lhs, vec![PencilBlock::finite(g("0"), 2 * k + 1)]);
                if k >= 1 {
                    let ms1 = build_m::<GaussianRational>(sigma, k - 1);
                    let lhs = decompose(&z1.direct_sum(&ms1).direct_sum(&z1), &mt);
                    assert_eq!(lhs, vec![PencilBlock::infinite(k), PencilBlock::infinite(k)]);
                    let lhs = decompose(&i1.direct_sum(&ms1).direct_sum(&z1), &mt);
                    assert_eq!(lhs, vec![PencilBlock::infinite(2 * k)]);
                }
            }
        }
    }
}

fn arb_block() -> impl Strategy<Value = PencilBlock> {
    let lam = prop::sample::select(vec!["0", "1", "-1", "2", "1/2", "i", "1+i", "-3/4i"]);
    prop_oneof![
        (0usize..3).prop_map(PencilBlock::right),
        (0usize..3).prop_map(PencilBlock::left),
        (1usize..3).prop_map(PencilBlock::infinite),
        (lam, 1usize..4).prop_map(|(l, n)| PencilBlock::finite(l.parse().unwrap(), n)),
    ]
}

fn arb_invertible(n: usize) -> impl Strategy<Value = GMatrix> {
    proptest::collection::vec((-2i64..3, -1i64..2), n * n).prop_filter_map("singular", move |v| {
        let m = GMatrix::new(n, n, v.into_iter().map(|(a, b)| GaussianRational::from_parts(a, 1, b, 1)).collect())
            .unwrap();
        m.is_invertible().then_some(m)
    })
}

fn arb_case() -> impl Strategy<Value = (Vec<PencilBlock>, GMatrix, GMatrix)> {
    proptest::collection::vec(arb_block(), 1..4).prop_flat_map(|mut blocks| {
        blocks.sort();
        let (rows, cols) = blocks.iter().fold((0, 0), |(r, c), b| (r + b.shape().0, c + b.shape().1));
        (Just(blocks), arb_invertible(rows), arb_invertible(cols))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn equivalence_invariance((blocks, r0, s0) in arb_case()) {
        let (a, b) = materialize_blocks::<GaussianRational>(&blocks);
        prop_assert_eq!(decompose(&a, &b), blocks.clone());
        let a2 = r0.mul(&a).mul(&s0);
        let b2 = r0.mul(&b).mul(&s0);
        let got = decompose(&a2, &b2);
        let rows: usize = got.iter().map(|b| b.shape().0).sum();
        let cols: usize = got.iter().map(|b| b.shape().1).sum();
        prop_assert_eq!((rows, cols), a.shape());
        prop_assert_eq!(got, blocks);
    }

    #[test]
    fn permutation_invariance(blocks in proptest::collection::vec(arb_block(), 1..4), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut blocks = blocks;
        blocks.sort();
        let (a, b) = materialize_blocks::<GaussianRational>(&blocks);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut pr: Vec<usize> = (0..a.rows()).collect();
        let mut pc: Vec<usize> = (0..a.cols()).collect();
        pr.shuffle(&mut rng);
        pc.shuffle(&mut rng);
        let a2 = a.permute_rows(&pr).unwrap().permute_cols(&pc).unwrap();
        let b2 = b.permute_rows(&pr).unwrap().permute_cols(&pc).unwrap();
        prop_assert_eq!(decompose(&a2, &b2), blocks);
    }
}
