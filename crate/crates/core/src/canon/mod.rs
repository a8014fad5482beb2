//! Canonical decompositions under congruence, *congruence and the pair
//! relations, computed by decomposing the associated pencil and reading
//! the summand tables backwards.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{GaussianRational, Scalar};
use crate::matrix::ExactMatrix;
use crate::pencil::{kronecker_decompose, BlockKind, PencilBlock};
use crate::summands::{
    materialize_all, mu_from_lambda, CParam, Family, MuMap, SignTag, Summand, SummandDescriptor,
};

/// The seven classification problems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `A -> S^T A S`.
    Congruence,
    /// `A -> S^* A S`.
    Star,
    /// Symmetric pairs, first canonical form.
    SymSym,
    /// Symmetric pairs, second canonical form (uses `N_n`).
    SymSymSecond,
    SymSkew,
    SkewSkew,
    /// Hermitian pairs under *congruence.
    HermHerm,
}

/// Coarse kind of a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Congruence,
    StarCongruence,
    PairCongruence,
    PairStarCongruence,
}

impl Relation {
    pub const ALL: [Relation; 7] = [
        Relation::Congruence,
        Relation::Star,
        Relation::SymSym,
        Relation::SymSymSecond,
        Relation::SymSkew,
        Relation::SkewSkew,
        Relation::HermHerm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Congruence => "congruence",
            Relation::Star => "star",
            Relation::SymSym => "sym-sym",
            Relation::SymSymSecond => "sym-sym-second",
            Relation::SymSkew => "sym-skew",
            Relation::SkewSkew => "skew-skew",
            Relation::HermHerm => "herm-herm",
        }
    }

    pub fn kind(self) -> RelationKind {
        match self {
            Relation::Congruence => RelationKind::Congruence,
            Relation::Star => RelationKind::StarCongruence,
            Relation::HermHerm => RelationKind::PairStarCongruence,
            _ => RelationKind::PairCongruence,
        }
    }

    /// Whether inputs are single matrices rather than pairs.
    pub fn is_single(self) -> bool {
        matches!(self, Relation::Congruence | Relation::Star)
    }

    pub fn is_star(self) -> bool {
        matches!(self, Relation::Star | Relation::HermHerm)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown relation `{s}`")))
    }
}

/// Sorted multiset of canonical summands together with the pencil blocks
/// they were read from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalDecomposition {
    pub relation: Relation,
    pub summands: Vec<SummandDescriptor>,
    pub blocks: Vec<PencilBlock>,
}

impl CanonicalDecomposition {
    fn new(relation: Relation, mut summands: Vec<SummandDescriptor>, blocks: Vec<PencilBlock>) -> Self {
        summands.sort();
        Self { relation, summands, blocks }
    }

    pub fn kind(&self) -> RelationKind {
        self.relation.kind()
    }

    /// Total size of all summands.
    pub fn size(&self) -> usize {
        self.summands.iter().map(|d| d.n).sum()
    }

    pub fn has_undetermined_signs(&self) -> bool {
        self.summands.iter().any(|d| !d.sign_determined())
    }

    /// Multiset equality, treating `sign=?` as matching either sign.
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self.relation == other.relation
            && crate::summands::multiset_eq_up_to_sign(&self.summands, &other.summands)
    }

    /// Human-readable notes on what the decomposition does not determine.
    pub fn notes(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.has_undetermined_signs() {
            return out;
        }
        match self.relation {
            Relation::Star => out.push(
                "summands marked sign=? are determined only up to multiplication by -1; \
                 the pencil (A*, A) fixes mu only through mu^2"
                    .into(),
            ),
            Relation::HermHerm => out.push(
                "summands marked sign=? are determined only up to replacing the pair by its negative \
                 ((a, b) -> (-a, -b) for HE2, mu = i or -i for odd HE1)"
                    .into(),
            ),
            _ => {}
        }
        out
    }

    /// Explicit canonical matrix or pair in the requested scalar domain.
    pub fn materialize<S: Scalar>(&self) -> Result<Summand<S>> {
        materialize_all::<S>(&self.summands)
    }
}

/// Multiset of pencil blocks with removal helpers.
struct BlockBag(BTreeMap<PencilBlock, usize>);

impl BlockBag {
    fn new(blocks: &[PencilBlock]) -> Self {
        let mut m = BTreeMap::new();
        for b in blocks {
            *m.entry(b.clone()).or_insert(0) += 1;
        }
        Self(m)
    }

    fn take(&mut self, b: &PencilBlock) -> bool {
        match self.0.get_mut(b) {
            Some(c) if *c > 0 => {
                *c -= 1;
                if *c == 0 {
                    self.0.remove(b);
                }
                true
            }
            _ => false,
        }
    }

    /// Next remaining block in sorted order.
    fn pop_first(&mut self) -> Option<PencilBlock> {
        let b = self.0.keys().next()?.clone();
        self.take(&b);
        Some(b)
    }
}

fn malformed(b: &PencilBlock, missing: &str) -> Error {
    Error::MalformedPencil(format!("block `{b}` has no partner {missing}"))
}

fn incompatible(b: &PencilBlock, missing: &str) -> Error {
    Error::PencilNotCompatible(format!("block `{b}` has no partner {missing}"))
}

fn g_int(k: i64) -> GaussianRational {
    GaussianRational::from_int(k)
}

/// Remove the `LeftSingular k` partner of a `RightSingular k` block.
/// Singular blocks sort first, so every right block is seen before its
/// partner and unmatched left blocks surface as errors of their own.
fn take_left_partner(bag: &mut BlockBag, b: &PencilBlock, err: fn(&PencilBlock, &str) -> Error) -> Result<()> {
    if bag.take(&PencilBlock::left(b.size)) {
        Ok(())
    } else {
        Err(err(b, "LeftSingular of the same size"))
    }
}

fn require_square<S: Scalar>(a: &ExactMatrix<S>) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare(a.rows(), a.cols()))
    }
}

fn require_same_shape<S: Scalar>(a: &ExactMatrix<S>, b: &ExactMatrix<S>) -> Result<()> {
    require_square(a)?;
    require_square(b)?;
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch(format!("{}x{} vs {}x{}", a.rows(), a.cols(), b.rows(), b.cols())));
    }
    Ok(())
}

fn blocks_of<S: Scalar>(a: &ExactMatrix<S>, b: &ExactMatrix<S>) -> Result<Vec<PencilBlock>> {
    Ok(kronecker_decompose(a, b)?.blocks)
}

fn build(d: Result<SummandDescriptor>) -> Result<SummandDescriptor> {
    d.map_err(|e| Error::Internal(format!("table produced an invalid descriptor: {e}")))
}

/// Canonical form of `A` under congruence, read from `(A^T, A)`.
pub fn canon_congruence<S: Scalar>(a: &ExactMatrix<S>) -> Result<CanonicalDecomposition> {
    require_square(a)?;
    let blocks = blocks_of(&a.transpose(), a)?;
    let out = match_congruence(&blocks)?;
    Ok(CanonicalDecomposition::new(Relation::Congruence, out, blocks))
}

fn match_congruence(blocks: &[PencilBlock]) -> Result<Vec<SummandDescriptor>> {
    let mut bag = BlockBag::new(blocks);
    let mut out = Vec::new();
    let (one, minus_one) = (g_int(1), g_int(-1));
    while let Some(b) = bag.pop_first() {
        let k = b.size;
        let d = match &b.kind {
            BlockKind::RightSingular => {
                take_left_partner(&mut bag, &b, malformed)?;
                SummandDescriptor::cm2(2 * k + 1, 0)
            }
            BlockKind::LeftSingular => return Err(malformed(&b, "RightSingular of the same size")),
            BlockKind::InfiniteEigen => {
                if !bag.take(&PencilBlock::finite(GaussianRational::default(), k)) {
                    return Err(malformed(&b, "FiniteEigen(0) of the same size"));
                }
                SummandDescriptor::cm1(2 * k, GaussianRational::default())
            }
            BlockKind::FiniteEigen(l) if l.is_zero() => return Err(malformed(&b, "InfiniteEigen of the same size")),
            BlockKind::FiniteEigen(l) if *l == one || *l == minus_one => {
                let natural = if k % 2 == 1 { one.clone() } else { minus_one.clone() };
                if *l == natural {
                    SummandDescriptor::cm2(k, 1)
                } else {
                    if !bag.take(&b) {
                        return Err(malformed(&b, "of identical shape"));
                    }
                    if *l == one {
                        SummandDescriptor::cm3(2 * k)
                    } else {
                        SummandDescriptor::cm2(2 * k, 0)
                    }
                }
            }
            BlockKind::FiniteEigen(l) => {
                let inv = l.recip().expect("nonzero");
                if !bag.take(&PencilBlock::finite(inv, k)) {
                    return Err(malformed(&b, "FiniteEigen(1/lambda) of the same size"));
                }
                SummandDescriptor::cm1(2 * k, l.clone())
            }
        };
        out.push(build(d)?);
    }
    Ok(out)
}

/// Canonical form of `A` under *congruence, read from `(A^*, A)`.
pub fn canon_star_congruence<S: Scalar>(a: &ExactMatrix<S>) -> Result<CanonicalDecomposition> {
    require_square(a)?;
    let blocks = blocks_of(&a.conjugate_transpose(), a)?;
    let out = match_star(&blocks)?;
    Ok(CanonicalDecomposition::new(Relation::Star, out, blocks))
}

fn match_star(blocks: &[PencilBlock]) -> Result<Vec<SummandDescriptor>> {
    let mut bag = BlockBag::new(blocks);
    let mut out = Vec::new();
    while let Some(b) = bag.pop_first() {
        let k = b.size;
        let d = match &b.kind {
            BlockKind::RightSingular => {
                take_left_partner(&mut bag, &b, malformed)?;
                SummandDescriptor::cmi1(2 * k + 1, GaussianRational::default())
            }
            BlockKind::LeftSingular => return Err(malformed(&b, "RightSingular of the same size")),
            BlockKind::InfiniteEigen => {
                if !bag.take(&PencilBlock::finite(GaussianRational::default(), k)) {
                    return Err(malformed(&b, "FiniteEigen(0) of the same size"));
                }
                SummandDescriptor::cmi1(2 * k, GaussianRational::default())
            }
            BlockKind::FiniteEigen(l) if l.is_zero() => return Err(malformed(&b, "InfiniteEigen of the same size")),
            BlockKind::FiniteEigen(nu) if nu.modulus_squared().is_one() => {
                let target = if k % 2 == 1 { nu.clone() } else { -nu.clone() };
                let mu = target.sqrt_in_field().ok_or_else(|| {
                    Error::EigenvalueOutsideField(format!(
                        "CMI2 parameter mu with mu^2 = {target} is not in Q(i)"
                    ))
                })?;
                SummandDescriptor::cmi2(k, mu, SignTag::Unknown)
            }
            BlockKind::FiniteEigen(l) => {
                let partner = l.conjugate().recip().expect("nonzero");
                if !bag.take(&PencilBlock::finite(partner, k)) {
                    return Err(malformed(&b, "FiniteEigen(1/conj(lambda)) of the same size"));
                }
                SummandDescriptor::cmi1(2 * k, l.clone())
            }
        };
        out.push(build(d)?);
    }
    Ok(out)
}

fn require_symmetric<S: Scalar>(m: &ExactMatrix<S>) -> Result<()> {
    if m.is_symmetric()? {
        Ok(())
    } else {
        Err(Error::NotSymmetric)
    }
}

fn require_skew<S: Scalar>(m: &ExactMatrix<S>) -> Result<()> {
    if m.is_skew_symmetric()? {
        Ok(())
    } else {
        Err(Error::NotSkew)
    }
}

fn require_hermitian<S: Scalar>(m: &ExactMatrix<S>) -> Result<()> {
    if m.is_hermitian()? {
        Ok(())
    } else {
        Err(Error::NotHermitian)
    }
}

/// Which of the two canonical forms for symmetric pairs to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymForm {
    /// Summands SSS1N, SS2N.
    First,
    /// Summands LYG, NN_IDENT, SSNEW.
    Second,
}

/// Canonical form of a pair of symmetric matrices under congruence.
pub fn canon_pair_sym_sym<S: Scalar>(a: &ExactMatrix<S>, b: &ExactMatrix<S>, form: SymForm) -> Result<CanonicalDecomposition> {
    require_same_shape(a, b)?;
    require_symmetric(a)?;
    require_symmetric(b)?;
    let blocks = blocks_of(a, b)?;
    let out = match_sym_sym(&blocks, form)?;
    let relation = match form {
        SymForm::First => Relation::SymSym,
        SymForm::Second => Relation::SymSymSecond,
    };
    Ok(CanonicalDecomposition::new(relation, out, blocks))
}

fn match_sym_sym(blocks: &[PencilBlock], form: SymForm) -> Result<Vec<SummandDescriptor>> {
    let mut bag = BlockBag::new(blocks);
    let mut out = Vec::new();
    while let Some(bl) = bag.pop_first() {
        let n = bl.size;
        let d = match (&bl.kind, form) {
            (BlockKind::RightSingular, _) => {
                take_left_partner(&mut bag, &bl, malformed)?;
                match form {
                    SymForm::First => SummandDescriptor::sss1n(2 * n + 1, Some(0), None),
                    SymForm::Second => SummandDescriptor::ssnew(2 * n + 1),
                }
            }
            (BlockKind::LeftSingular, _) => return Err(malformed(&bl, "RightSingular of the same size")),
            (BlockKind::InfiniteEigen, SymForm::First) => {
                if n % 2 == 1 {
                    SummandDescriptor::sss1n(n, Some(1), None)
                } else {
                    SummandDescriptor::ss2n(n, None)
                }
            }
            (BlockKind::InfiniteEigen, SymForm::Second) => SummandDescriptor::nn_ident(n),
            (BlockKind::FiniteEigen(l), SymForm::First) => {
                if n % 2 == 0 {
                    SummandDescriptor::sss1n(n, Some(1), Some(l.clone()))
                } else {
                    SummandDescriptor::ss2n(n, Some(l.clone()))
                }
            }
            (BlockKind::FiniteEigen(l), SymForm::Second) => SummandDescriptor::lyg(n, l.clone()),
        };
        out.push(build(d)?);
    }
    Ok(out)
}

/// Canonical form of a symmetric/skew-symmetric pair under congruence.
pub fn canon_pair_sym_skew<S: Scalar>(a: &ExactMatrix<S>, b: &ExactMatrix<S>) -> Result<CanonicalDecomposition> {
    require_same_shape(a, b)?;
    require_symmetric(a)?;
    require_skew(b)?;
    let blocks = blocks_of(a, b)?;
    let out = match_sym_skew(&blocks)?;
    Ok(CanonicalDecomposition::new(Relation::SymSkew, out, blocks))
}

fn match_sym_skew(blocks: &[PencilBlock]) -> Result<Vec<SummandDescriptor>> {
    let mut bag = BlockBag::new(blocks);
    let mut out = Vec::new();
    while let Some(bl) = bag.pop_first() {
        let n = bl.size;
        let d = match &bl.kind {
            BlockKind::RightSingular => {
                take_left_partner(&mut bag, &bl, incompatible)?;
                SummandDescriptor::sc2(2 * n + 1, 0)
            }
            BlockKind::LeftSingular => return Err(incompatible(&bl, "RightSingular of the same size")),
            BlockKind::InfiniteEigen => {
                if n % 2 == 0 {
                    SummandDescriptor::sc2(n, 1)
                } else {
                    if !bag.take(&bl) {
                        return Err(incompatible(&bl, "of identical shape (odd infinite blocks come in pairs)"));
                    }
                    SummandDescriptor::sc2(2 * n, 0)
                }
            }
            BlockKind::FiniteEigen(l) if l.is_zero() => {
                if n % 2 == 1 {
                    SummandDescriptor::sc2(n, 1)
                } else {
                    if !bag.take(&bl) {
                        return Err(incompatible(&bl, "of identical shape (even zero blocks come in pairs)"));
                    }
                    SummandDescriptor::sc3(2 * n)
                }
            }
            BlockKind::FiniteEigen(l) => {
                if !bag.take(&PencilBlock::finite(-l.clone(), n)) {
                    return Err(incompatible(&bl, "FiniteEigen(-lambda) of the same size"));
                }
                SummandDescriptor::sc1(2 * n, l.clone())
            }
        };
        out.push(build(d)?);
    }
    Ok(out)
}

/// Canonical form of a pair of skew-symmetric matrices under congruence.
pub fn canon_pair_skew_skew<S: Scalar>(a: &ExactMatrix<S>, b: &ExactMatrix<S>) -> Result<CanonicalDecomposition> {
    require_same_shape(a, b)?;
    require_skew(a)?;
    require_skew(b)?;
    let blocks = blocks_of(a, b)?;
    let out = match_skew_skew(&blocks)?;
    Ok(CanonicalDecomposition::new(Relation::SkewSkew, out, blocks))
}

fn match_skew_skew(blocks: &[PencilBlock]) -> Result<Vec<SummandDescriptor>> {
    let mut bag = BlockBag::new(blocks);
    let mut out = Vec::new();
    while let Some(bl) = bag.pop_first() {
        let n = bl.size;
        let d = match &bl.kind {
            BlockKind::RightSingular => {
                take_left_partner(&mut bag, &bl, incompatible)?;
                SummandDescriptor::cc23(2 * n + 1)
            }
            BlockKind::LeftSingular => return Err(incompatible(&bl, "RightSingular of the same size")),
            kind => {
                if !bag.take(&bl) {
                    return Err(incompatible(&bl, "of identical shape (regular blocks come in pairs)"));
                }
                match kind {
                    BlockKind::FiniteEigen(l) => SummandDescriptor::cc1(2 * n, l.clone()),
                    _ => SummandDescriptor::cc23(2 * n),
                }
            }
        };
        out.push(build(d)?);
    }
    Ok(out)
}

/// Canonical form of a pair of Hermitian matrices under *congruence.
pub fn canon_pair_hermitian<S: Scalar>(a: &ExactMatrix<S>, b: &ExactMatrix<S>) -> Result<CanonicalDecomposition> {
    require_same_shape(a, b)?;
    require_hermitian(a)?;
    require_hermitian(b)?;
    let blocks = blocks_of(a, b)?;
    let out = match_hermitian(&blocks)?;
    Ok(CanonicalDecomposition::new(Relation::HermHerm, out, blocks))
}

fn match_hermitian(blocks: &[PencilBlock]) -> Result<Vec<SummandDescriptor>> {
    let mut bag = BlockBag::new(blocks);
    let mut out = Vec::new();
    while let Some(bl) = bag.pop_first() {
        let n = bl.size;
        let d = match &bl.kind {
            BlockKind::RightSingular => {
                take_left_partner(&mut bag, &bl, incompatible)?;
                SummandDescriptor::he1(2 * n + 1, GaussianRational::i(), SignTag::Unknown)
            }
            BlockKind::LeftSingular => return Err(incompatible(&bl, "RightSingular of the same size")),
            BlockKind::InfiniteEigen => SummandDescriptor::he2(n, CParam::Infinite, SignTag::Unknown),
            BlockKind::FiniteEigen(c) if c.is_real() => {
                SummandDescriptor::he2(n, CParam::Finite(c.re.clone()), SignTag::Unknown)
            }
            BlockKind::FiniteEigen(m) => {
                if !bag.take(&PencilBlock::finite(m.conjugate(), n)) {
                    return Err(incompatible(&bl, "FiniteEigen(conj(mu)) of the same size"));
                }
                SummandDescriptor::he1(2 * n, m.clone(), SignTag::Plus)
            }
        };
        out.push(build(d)?);
    }
    Ok(out)
}

/// Input to [`canonicalize`]: one matrix or a pair.
#[derive(Clone, Debug)]
pub enum CanonInput<S: Scalar> {
    Matrix(ExactMatrix<S>),
    Pair(ExactMatrix<S>, ExactMatrix<S>),
}

/// Dispatch on the relation.
pub fn canonicalize<S: Scalar>(relation: Relation, input: &CanonInput<S>) -> Result<CanonicalDecomposition> {
    match (relation, input) {
        (Relation::Congruence, CanonInput::Matrix(a)) => canon_congruence(a),
        (Relation::Star, CanonInput::Matrix(a)) => canon_star_congruence(a),
        (Relation::SymSym, CanonInput::Pair(a, b)) => canon_pair_sym_sym(a, b, SymForm::First),
        (Relation::SymSymSecond, CanonInput::Pair(a, b)) => canon_pair_sym_sym(a, b, SymForm::Second),
        (Relation::SymSkew, CanonInput::Pair(a, b)) => canon_pair_sym_skew(a, b),
        (Relation::SkewSkew, CanonInput::Pair(a, b)) => canon_pair_skew_skew(a, b),
        (Relation::HermHerm, CanonInput::Pair(a, b)) => canon_pair_hermitian(a, b),
        (r, CanonInput::Matrix(_)) => Err(Error::ShapeMismatch(format!("relation {r} needs a pair of matrices"))),
        (r, CanonInput::Pair(..)) => Err(Error::ShapeMismatch(format!("relation {r} needs a single matrix"))),
    }
}

/// The relation a family belongs to.
pub fn relation_of(family: Family) -> Relation {
    use Family::*;
    match family {
        CM1 | CM2 | CM3 => Relation::Congruence,
        CMI1 | CMI2 => Relation::Star,
        SSS1N | SS2N => Relation::SymSym,
        LYG | NN_IDENT | SSNEW => Relation::SymSymSecond,
        SC1 | SC2 | SC3 => Relation::SymSkew,
        CC1 | CC23 => Relation::SkewSkew,
        HE1 | HE2 => Relation::HermHerm,
    }
}

/// Outcome of checking one descriptor against its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCheck {
    pub descriptor: SummandDescriptor,
    pub predicted: Vec<PencilBlock>,
    pub computed: Vec<PencilBlock>,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.predicted == self.computed
    }
}

/// Materialize `d`, decompose its pencil and compare with the tables.
/// Runs over the radical tower so every family can be materialized.
pub fn check_table(d: &SummandDescriptor) -> Result<TableCheck> {
    let (a, b) = d.table_pencil::<crate::field::TowerElement>()?;
    let computed = kronecker_decompose(&a, &b)?.blocks;
    Ok(TableCheck { descriptor: d.clone(), predicted: d.predicted_blocks(), computed })
}

/// `true` when the table prediction for `d` matches the computed blocks.
pub fn verify_table(d: &SummandDescriptor) -> Result<bool> {
    Ok(check_table(d)?.passed())
}

/// The congruence summand of `B + C` for a symmetric/skew canonical pair
/// `(B, C)` (where `(A^T, A) = (B - C, B + C)`).
pub fn sym_skew_to_congruence(d: &SummandDescriptor) -> Result<SummandDescriptor> {
    match d.family {
        Family::SC1 => {
            let mu = d.lambda.clone().expect("SC1 has lambda");
            let lambda = mu_from_lambda(MuMap::Congruence, &mu)?;
            SummandDescriptor::cm1(d.n, lambda)
        }
        Family::SC2 => SummandDescriptor::cm2(d.n, d.eps.expect("SC2 has eps")),
        Family::SC3 => SummandDescriptor::cm3(d.n),
        f => Err(Error::Precondition(format!("{f} is not a symmetric/skew family"))),
    }
}

/// The Hermitian-pair summand matching a *congruence summand under the
/// Cartesian decomposition `A = B + iC`.
pub fn star_to_hermitian(d: &SummandDescriptor) -> Result<SummandDescriptor> {
    match d.family {
        Family::CMI1 => {
            let l = d.lambda.clone().expect("CMI1 has lambda");
            if d.n % 2 == 1 {
                SummandDescriptor::he1(d.n, GaussianRational::i(), SignTag::Unknown)
            } else if l.is_zero() {
                SummandDescriptor::he1(d.n, GaussianRational::i(), SignTag::Plus)
            } else {
                SummandDescriptor::he1(d.n, mu_from_lambda(MuMap::Hermitian, &l)?, SignTag::Plus)
            }
        }
        Family::CMI2 => {
            let mu = d.mu.clone().expect("CMI2 has mu");
            let (a, b) = (mu.re, mu.im);
            let c = if d.n % 2 == 1 {
                if a.is_zero() {
                    CParam::Infinite
                } else {
                    CParam::Finite(b / a)
                }
            } else if b.is_zero() {
                CParam::Infinite
            } else {
                CParam::Finite(-a / b)
            };
            SummandDescriptor::he2(d.n, c, SignTag::Unknown)
        }
        f => Err(Error::Precondition(format!("{f} is not a *congruence family"))),
    }
}

#[cfg(test)]
mod tests;
