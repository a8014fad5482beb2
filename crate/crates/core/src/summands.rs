//! Canonical summand families: descriptors, materialization, and the
//! structural transforms used around them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{fmt_rational, parse_rational, GaussianRational, Rational, Scalar};
use crate::matrix::ExactMatrix;
use crate::pencil::PencilBlock;

/// Canonical families, one tag per displayed matrix or pair.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    CM1,
    CM2,
    CM3,
    CMI1,
    CMI2,
    SSS1N,
    SS2N,
    LYG,
    NN_IDENT,
    SSNEW,
    SC1,
    SC2,
    SC3,
    CC1,
    CC23,
    HE1,
    HE2,
}

impl Family {
    pub const ALL: [Family; 17] = [
        Family::CM1,
        Family::CM2,
        Family::CM3,
        Family::CMI1,
        Family::CMI2,
        Family::SSS1N,
        Family::SS2N,
        Family::LYG,
        Family::NN_IDENT,
        Family::SSNEW,
        Family::SC1,
        Family::SC2,
        Family::SC3,
        Family::CC1,
        Family::CC23,
        Family::HE1,
        Family::HE2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::CM1 => "CM1",
            Family::CM2 => "CM2",
            Family::CM3 => "CM3",
            Family::CMI1 => "CMI1",
            Family::CMI2 => "CMI2",
            Family::SSS1N => "SSS1N",
            Family::SS2N => "SS2N",
            Family::LYG => "LYG",
            Family::NN_IDENT => "NN_IDENT",
            Family::SSNEW => "SSNEW",
            Family::SC1 => "SC1",
            Family::SC2 => "SC2",
            Family::SC3 => "SC3",
            Family::CC1 => "CC1",
            Family::CC23 => "CC23",
            Family::HE1 => "HE1",
            Family::HE2 => "HE2",
        }
    }

    /// Single-matrix families (congruence or *congruence); the rest are pairs.
    pub fn is_matrix(self) -> bool {
        matches!(self, Family::CM1 | Family::CM2 | Family::CM3 | Family::CMI1 | Family::CMI2)
    }

    fn params(self) -> &'static [&'static str] {
        match self {
            Family::CM1 | Family::CMI1 | Family::SS2N | Family::LYG | Family::SC1 | Family::CC1 => &["lambda"],
            Family::CM2 | Family::SC2 => &["eps"],
            Family::SSS1N => &["lambda", "eps"],
            Family::CMI2 => &["mu", "sign"],
            Family::HE1 => &["mu", "sign"],
            Family::HE2 => &["c", "sign"],
            Family::CM3 | Family::NN_IDENT | Family::SSNEW | Family::SC3 | Family::CC23 => &[],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

/// Sign of a summand whose class is determined by the pencil only up to
/// multiplication by `-1`. `Unknown` records that ambiguity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SignTag {
    Plus,
    Minus,
    Unknown,
}

impl SignTag {
    fn symbol(self) -> &'static str {
        match self {
            SignTag::Plus => "+",
            SignTag::Minus => "-",
            SignTag::Unknown => "?",
        }
    }
}

/// The HE2 parameter: `b/a` (odd size) or `-a/b` (even size), or infinity
/// when the denominator vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CParam {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for CParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CParam::Finite(q) => f.write_str(&fmt_rational(q)),
            CParam::Infinite => f.write_str("inf"),
        }
    }
}

/// A canonical summand: family, size and parameters, stored in normalized
/// (representative) form. Construct through [`SummandDescriptor::new`] or
/// the per-family helpers, which validate and normalize.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SummandDescriptor {
    pub family: Family,
    pub n: usize,
    pub lambda: Option<GaussianRational>,
    pub eps: Option<u8>,
    pub mu: Option<GaussianRational>,
    pub c: Option<CParam>,
    pub sign: SignTag,
}

fn g_int(k: i64) -> GaussianRational {
    GaussianRational::from_int(k)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidDescriptor(msg.into())
}

impl SummandDescriptor {
    fn bare(family: Family, n: usize) -> Self {
        Self { family, n, lambda: None, eps: None, mu: None, c: None, sign: SignTag::Plus }
    }

    /// Validate and normalize. Forced parameters may be passed as `None`.
    pub fn new(
        family: Family,
        n: usize,
        lambda: Option<GaussianRational>,
        eps: Option<u8>,
        mu: Option<GaussianRational>,
        c: Option<CParam>,
        sign: SignTag,
    ) -> Result<Self> {
        use Family::*;
        if n == 0 {
            return Err(invalid("size must be positive"));
        }
        let allowed = family.params();
        let given = [("lambda", lambda.is_some()), ("eps", eps.is_some()), ("mu", mu.is_some()), ("c", c.is_some())];
        for (name, present) in given {
            if present && !allowed.contains(&name) {
                return Err(invalid(format!("{family} takes no parameter `{name}`")));
            }
        }
        if sign != SignTag::Plus && !allowed.contains(&"sign") {
            return Err(invalid(format!("{family} carries no sign")));
        }
        if let Some(e) = eps {
            if e > 1 {
                return Err(invalid("eps must be 0 or 1"));
            }
        }
        let zero = GaussianRational::default();
        let one = g_int(1);
        let mut d = Self::bare(family, n);
        d.sign = sign;
        match family {
            CM1 => {
                if n % 2 != 0 {
                    return Err(invalid("CM1 has even size"));
                }
                let l = lambda.ok_or_else(|| invalid("CM1 needs lambda"))?;
                if l == one || l == -one.clone() {
                    return Err(invalid("CM1 requires lambda != +-1"));
                }
                d.lambda = Some(if Scalar::is_zero(&l) { l } else { std::cmp::min(l.clone(), l.recip().unwrap()) });
            }
            CM2 | SC2 => {
                let e = match (eps, n % 4 == 0) {
                    (Some(0), true) => return Err(invalid(format!("{family} with n divisible by 4 needs eps=1"))),
                    (Some(e), _) => e,
                    (None, true) => 1,
                    (None, false) => return Err(invalid(format!("{family} needs eps"))),
                };
                d.eps = Some(e);
            }
            CM3 | SC3 => {
                if n % 4 != 0 {
                    return Err(invalid(format!("{family} has size divisible by 4")));
                }
            }
            CMI1 => {
                let l = match (lambda, n % 2 == 1) {
                    (None, true) => zero.clone(),
                    (Some(l), true) if !Scalar::is_zero(&l) => {
                        return Err(invalid("CMI1 of odd size needs lambda=0"));
                    }
                    (Some(l), _) => l,
                    (None, false) => return Err(invalid("CMI1 needs lambda")),
                };
                let m2 = l.modulus_squared();
                if m2.is_one() {
                    return Err(invalid("CMI1 requires |lambda| != 1"));
                }
                d.lambda = Some(if m2 > Rational::one() { l.conjugate().recip().unwrap() } else { l });
            }
            CMI2 => {
                let m = mu.ok_or_else(|| invalid("CMI2 needs mu"))?;
                if !m.modulus_squared().is_one() {
                    return Err(invalid("CMI2 requires |mu| = 1"));
                }
                let neg = -m.clone();
                if neg > m {
                    d.mu = Some(neg);
                    d.sign = match sign {
                        SignTag::Plus => SignTag::Minus,
                        SignTag::Minus => SignTag::Plus,
                        SignTag::Unknown => SignTag::Unknown,
                    };
                } else {
                    d.mu = Some(m);
                }
            }
            SSS1N => {
                let (l, e) = if n % 2 == 0 {
                    if eps == Some(0) {
                        return Err(invalid("SSS1N of even size needs eps=1"));
                    }
                    (lambda.ok_or_else(|| invalid("SSS1N of even size needs lambda"))?, 1)
                } else {
                    if lambda.as_ref().is_some_and(|l| !Scalar::is_zero(l)) {
                        return Err(invalid("SSS1N of odd size needs lambda=0"));
                    }
                    (zero.clone(), eps.ok_or_else(|| invalid("SSS1N of odd size needs eps"))?)
                };
                d.lambda = Some(l);
                d.eps = Some(e);
            }
            SS2N => {
                let l = if n % 2 == 0 {
                    if lambda.as_ref().is_some_and(|l| !Scalar::is_zero(l)) {
                        return Err(invalid("SS2N of even size needs lambda=0"));
                    }
                    zero.clone()
                } else {
                    lambda.ok_or_else(|| invalid("SS2N of odd size needs lambda"))?
                };
                d.lambda = Some(l);
            }
            LYG | CC1 => {
                if family == CC1 && n % 2 != 0 {
                    return Err(invalid("CC1 has even size"));
                }
                d.lambda = Some(lambda.ok_or_else(|| invalid(format!("{family} needs lambda")))?);
            }
            NN_IDENT | CC23 => {}
            SSNEW => {
                if n % 2 == 0 {
                    return Err(invalid("SSNEW has odd size"));
                }
            }
            SC1 => {
                if n % 2 != 0 {
                    return Err(invalid("SC1 has even size"));
                }
                let l = lambda.ok_or_else(|| invalid("SC1 needs lambda"))?;
                if Scalar::is_zero(&l) {
                    return Err(invalid("SC1 requires lambda != 0"));
                }
                d.lambda = Some(std::cmp::max(l.clone(), -l));
            }
            HE1 => {
                if n % 2 == 1 {
                    let m = mu.unwrap_or_else(GaussianRational::i);
                    if m != GaussianRational::i() && m != -GaussianRational::i() {
                        return Err(invalid("HE1 of odd size needs mu = +-i"));
                    }
                    d.mu = Some(GaussianRational::i());
                } else {
                    if sign == SignTag::Minus || sign == SignTag::Unknown {
                        return Err(invalid("HE1 of even size carries no sign"));
                    }
                    let m = mu.ok_or_else(|| invalid("HE1 of even size needs mu"))?;
                    if m.is_real() {
                        return Err(invalid("HE1 of even size needs a non-real mu"));
                    }
                    d.mu = Some(if m.im.is_negative() { m.conjugate() } else { m });
                }
                if sign == SignTag::Minus {
                    return Err(invalid("HE1 sign is either + or ?"));
                }
            }
            HE2 => {
                d.c = Some(c.ok_or_else(|| invalid("HE2 needs c"))?);
            }
        }
        Ok(d)
    }

    pub fn sign_determined(&self) -> bool {
        self.sign != SignTag::Unknown
    }

    /// Same descriptor with the sign marked as undetermined (for families
    /// that carry a sign).
    pub fn with_unknown_sign(&self) -> Self {
        let mut d = self.clone();
        if self.family.params().contains(&"sign") && !(self.family == Family::HE1 && self.n % 2 == 0) {
            d.sign = SignTag::Unknown;
        }
        d
    }

    /// Equality that treats an undetermined sign as matching either sign.
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.sign == SignTag::Unknown || b.sign == SignTag::Unknown {
            a.sign = SignTag::Unknown;
            b.sign = SignTag::Unknown;
        }
        a == b
    }

    pub fn cm1(n: usize, lambda: GaussianRational) -> Result<Self> {
        Self::new(Family::CM1, n, Some(lambda), None, None, None, SignTag::Plus)
    }
    pub fn cm2(n: usize, eps: u8) -> Result<Self> {
        Self::new(Family::CM2, n, None, Some(eps), None, None, SignTag::Plus)
    }
    pub fn cm3(n: usize) -> Result<Self> {
        Self::new(Family::CM3, n, None, None, None, None, SignTag::Plus)
    }
    pub fn cmi1(n: usize, lambda: GaussianRational) -> Result<Self> {
        Self::new(Family::CMI1, n, Some(lambda), None, None, None, SignTag::Plus)
    }
    pub fn cmi2(n: usize, mu: GaussianRational, sign: SignTag) -> Result<Self> {
        Self::new(Family::CMI2, n, None, None, Some(mu), None, sign)
    }
    pub fn sss1n(n: usize, eps: Option<u8>, lambda: Option<GaussianRational>) -> Result<Self> {
        Self::new(Family::SSS1N, n, lambda, eps, None, None, SignTag::Plus)
    }
    pub fn ss2n(n: usize, lambda: Option<GaussianRational>) -> Result<Self> {
        Self::new(Family::SS2N, n, lambda, None, None, None, SignTag::Plus)
    }
    pub fn lyg(n: usize, lambda: GaussianRational) -> Result<Self> {
        Self::new(Family::LYG, n, Some(lambda), None, None, None, SignTag::Plus)
    }
    pub fn nn_ident(n: usize) -> Result<Self> {
        Self::new(Family::NN_IDENT, n, None, None, None, None, SignTag::Plus)
    }
    pub fn ssnew(n: usize) -> Result<Self> {
        Self::new(Family::SSNEW, n, None, None, None, None, SignTag::Plus)
    }
    pub fn sc1(n: usize, lambda: GaussianRational) -> Result<Self> {
        Self::new(Family::SC1, n, Some(lambda), None, None, None, SignTag::Plus)
    }
    pub fn sc2(n: usize, eps: u8) -> Result<Self> {
        Self::new(Family::SC2, n, None, Some(eps), None, None, SignTag::Plus)
    }
    pub fn sc3(n: usize) -> Result<Self> {
        Self::new(Family::SC3, n, None, None, None, None, SignTag::Plus)
    }
    pub fn cc1(n: usize, lambda: GaussianRational) -> Result<Self> {
        Self::new(Family::CC1, n, Some(lambda), None, None, None, SignTag::Plus)
    }
    pub fn cc23(n: usize) -> Result<Self> {
        Self::new(Family::CC23, n, None, None, None, None, SignTag::Plus)
    }
    pub fn he1(n: usize, mu: GaussianRational, sign: SignTag) -> Result<Self> {
        Self::new(Family::HE1, n, None, None, Some(mu), None, sign)
    }
    pub fn he2(n: usize, c: CParam, sign: SignTag) -> Result<Self> {
        Self::new(Family::HE2, n, None, None, None, Some(c), sign)
    }

    /// The pencil whose Kronecker form the tables describe: `(B^T, B)` for
    /// congruence families, `(B^*, B)` for *congruence families, the pair
    /// itself otherwise.
    pub fn table_pencil<S: Scalar>(&self) -> Result<(ExactMatrix<S>, ExactMatrix<S>)> {
        Ok(match materialize::<S>(self)? {
            Summand::Matrix(b) => {
                let first = if matches!(self.family, Family::CMI1 | Family::CMI2) {
                    b.conjugate_transpose()
                } else {
                    b.transpose()
                };
                (first, b)
            }
            Summand::Pair(a, b) => (a, b),
        })
    }

    /// Kronecker blocks predicted by the tables, sorted.
    pub fn predicted_blocks(&self) -> Vec<PencilBlock> {
        use Family::*;
        let n = self.n;
        let k = n / 2;
        let lam = || self.lambda.clone().unwrap();
        let singular = || vec![PencilBlock::right(k), PencilBlock::left(k)];
        let fin = PencilBlock::finite;
        let mut out = match self.family {
            CM1 => {
                let l = lam();
                if Scalar::is_zero(&l) {
                    vec![PencilBlock::infinite(k), fin(l, k)]
                } else {
                    vec![fin(l.recip().unwrap(), k), fin(l, k)]
                }
            }
            CM2 => match (self.eps, n % 2) {
                (Some(0), 1) => singular(),
                (Some(0), _) => vec![fin(g_int(-1), k), fin(g_int(-1), k)],
                _ => vec![fin(g_int(if n % 2 == 1 { 1 } else { -1 }), n)],
            },
            CM3 => vec![fin(g_int(1), k), fin(g_int(1), k)],
            CMI1 => {
                let l = lam();
                if n % 2 == 1 {
                    singular()
                } else if Scalar::is_zero(&l) {
                    vec![PencilBlock::infinite(k), fin(l, k)]
                } else {
                    vec![fin(l.conjugate().recip().unwrap(), k), fin(l, k)]
                }
            }
            CMI2 => {
                let m = self.mu.clone().unwrap();
                let nu = m.clone() * &m;
                vec![fin(if n % 2 == 1 { nu } else { -nu }, n)]
            }
            SSS1N => match (n % 2, self.eps) {
                (1, Some(0)) => singular(),
                (1, _) => vec![PencilBlock::infinite(n)],
                _ => vec![fin(lam(), n)],
            },
            SS2N => {
                if n % 2 == 1 {
                    vec![fin(lam(), n)]
                } else {
                    vec![PencilBlock::infinite(n)]
                }
            }
            LYG => vec![fin(lam(), n)],
            NN_IDENT => vec![PencilBlock::infinite(n)],
            SSNEW => singular(),
            SC1 => vec![fin(lam(), k), fin(-lam(), k)],
            SC2 => match (self.eps, n % 2) {
                (Some(0), 1) => singular(),
                (Some(0), _) => vec![PencilBlock::infinite(k), PencilBlock::infinite(k)],
                (_, 1) => vec![fin(g_int(0), n)],
                _ => vec![PencilBlock::infinite(n)],
            },
            SC3 => vec![fin(g_int(0), k), fin(g_int(0), k)],
            CC1 => vec![fin(lam(), k), fin(lam(), k)],
            CC23 => {
                if n % 2 == 1 {
                    singular()
                } else {
                    vec![PencilBlock::infinite(k), PencilBlock::infinite(k)]
                }
            }
            HE1 => {
                if n % 2 == 1 {
                    singular()
                } else {
                    let m = self.mu.clone().unwrap();
                    vec![fin(m.conjugate(), k), fin(m, k)]
                }
            }
            HE2 => match self.c.clone().unwrap() {
                CParam::Finite(c) => vec![fin(GaussianRational::real(c), n)],
                CParam::Infinite => vec![PencilBlock::infinite(n)],
            },
        };
        out.sort();
        out
    }
}

/// Total order used for sorted descriptor lists.
pub fn descriptor_cmp(a: &SummandDescriptor, b: &SummandDescriptor) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for SummandDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}", self.family, self.n)?;
        if let Some(l) = &self.lambda {
            write!(f, ", lambda={l}")?;
        }
        if let Some(e) = self.eps {
            write!(f, ", eps={e}")?;
        }
        if let Some(m) = &self.mu {
            write!(f, ", mu={m}")?;
        }
        if let Some(c) = &self.c {
            write!(f, ", c={c}")?;
        }
        if self.sign != SignTag::Plus {
            write!(f, ", sign={}", self.sign.symbol())?;
        }
        f.write_str(")")
    }
}

impl FromStr for SummandDescriptor {
    type Err = Error;

    /// `FAMILY(n=..., lambda=..., eps=..., mu=..., c=..., sign=+|-|?)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("invalid descriptor `{s}`: {m}"));
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| bad("missing `(`"))?;
        let body = s[open + 1..].strip_suffix(')').ok_or_else(|| bad("missing `)`"))?;
        let family: Family = s[..open].trim().parse()?;
        let (mut n, mut lambda, mut eps, mut mu, mut c, mut sign) = (None, None, None, None, None, SignTag::Plus);
        for part in body.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let value = value.trim();
            match key.trim() {
                "n" => n = Some(value.parse::<usize>().map_err(|_| bad("bad size"))?),
                "lambda" => lambda = Some(value.parse::<GaussianRational>()?),
                "eps" => eps = Some(value.parse::<u8>().map_err(|_| bad("bad eps"))?),
                "mu" => mu = Some(value.parse::<GaussianRational>()?),
                "c" => {
                    c = Some(if value == "inf" {
                        CParam::Infinite
                    } else {
                        CParam::Finite(parse_rational(value)?)
                    })
                }
                "sign" => {
                    sign = match value {
                        "+" => SignTag::Plus,
                        "-" => SignTag::Minus,
                        "?" => SignTag::Unknown,
                        _ => return Err(bad("sign must be +, - or ?")),
                    }
                }
                other => return Err(bad(&format!("unknown key `{other}`"))),
            }
        }
        let n = n.ok_or_else(|| bad("missing n"))?;
        SummandDescriptor::new(family, n, lambda, eps, mu, c, sign).map_err(|e| bad(&e.to_string()))
    }
}

impl Serialize for SummandDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SummandDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A materialized summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Summand<S: Scalar> {
    Matrix(ExactMatrix<S>),
    Pair(ExactMatrix<S>, ExactMatrix<S>),
}

impl<S: Scalar> Summand<S> {
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Summand::Matrix(a), Summand::Matrix(b)) => Ok(Summand::Matrix(a.direct_sum(b))),
            (Summand::Pair(a, b), Summand::Pair(c, d)) => Ok(Summand::Pair(a.direct_sum(c), b.direct_sum(d))),
            _ => Err(Error::Precondition("cannot add a matrix and a pair".into())),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Summand::Matrix(a) | Summand::Pair(a, _) => a.rows(),
        }
    }
}

/// Tridiagonal matrix from diagonal, superdiagonal and subdiagonal entry
/// functions (indexed by the row of the upper entry).
fn tridiag<S: Scalar>(
    n: usize,
    diag: impl Fn(usize) -> S,
    sup: impl Fn(usize) -> S,
    sub: impl Fn(usize) -> S,
) -> ExactMatrix<S> {
    ExactMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diag(i)
        } else if j == i + 1 {
            sup(i)
        } else if i == j + 1 {
            sub(j)
        } else {
            S::zero()
        }
    })
}

fn alt<S: Scalar>(j: usize, even: &S, odd: &S) -> S {
    if j % 2 == 0 {
        even.clone()
    } else {
        odd.clone()
    }
}

fn first_only<S: Scalar>(i: usize, v: &S) -> S {
    if i == 0 {
        v.clone()
    } else {
        S::zero()
    }
}

/// Symmetric tridiagonal with `d` at position (1,1) and off-diagonal
/// entries alternating `even, odd, even, ...`.
fn sym_alt<S: Scalar>(n: usize, d: &S, even: &S, odd: &S) -> ExactMatrix<S> {
    tridiag(n, |i| first_only(i, d), |j| alt(j, even, odd), |j| alt(j, even, odd))
}

/// Skew tridiagonal with superdiagonal alternating `even, odd, ...`.
fn skew_alt<S: Scalar>(n: usize, even: &S, odd: &S) -> ExactMatrix<S> {
    tridiag(n, |_| S::zero(), |j| alt(j, even, odd), |j| -alt(j, even, odd))
}

/// `N_n`: symmetric tridiagonal, nilpotent, similar to `J_n(0)`; diagonal
/// `n-1, n-3, ..., 1-n` and off-diagonal `i sqrt(l (n-l))`.
pub fn build_n<S: Scalar>(n: usize) -> Result<ExactMatrix<S>> {
    if n == 0 {
        return Err(Error::Precondition("N_n needs n >= 1".into()));
    }
    let i = S::from_gaussian(&GaussianRational::i());
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for l in 1..n {
        let q = Rational::from_integer(((l * (n - l)) as i64).into());
        let root = S::sqrt_rational(&q)
            .ok_or_else(|| Error::RequiresRadicalExtension(format!("sqrt({q}) for N_{n}")))?;
        off.push(i.clone() * &root);
    }
    Ok(tridiag(
        n,
        |j| S::from_int(n as i64 - 1 - 2 * j as i64),
        |j| off[j].clone(),
        |j| off[j].clone(),
    ))
}

/// HE2 entries `(a, b)` from `c`, with `a > 0` (odd `n`) or `b > 0` (even
/// `n`) for sign `+`, negated for sign `-`.
pub fn he2_ab<S: Scalar>(n: usize, c: &CParam, sign: SignTag) -> Result<(S, S)> {
    let (mut a, mut b) = match c {
        CParam::Infinite => {
            if n % 2 == 1 {
                (S::zero(), S::one())
            } else {
                (S::one(), S::zero())
            }
        }
        CParam::Finite(c) => {
            // t = 1/sqrt(1 + c^2); odd: a = t, b = c t; even: b = t, a = -c t
            let q = (Rational::one() + c * c).recip();
            let t = S::sqrt_rational(&q).ok_or_else(|| {
                Error::RequiresRadicalExtension(format!("sqrt({q}) for HE2 with c={c}"))
            })?;
            let ct = S::from_gaussian(&GaussianRational::real(c.clone())) * &t;
            if n % 2 == 1 {
                (t, ct)
            } else {
                (-ct, t)
            }
        }
    };
    if sign == SignTag::Minus {
        a = -a;
        b = -b;
    }
    Ok((a, b))
}

/// Explicit matrix or pair for a descriptor.
pub fn materialize<S: Scalar>(d: &SummandDescriptor) -> Result<Summand<S>> {
    use Family::*;
    let n = d.n;
    let z = S::zero();
    let o = S::one();
    let lam = || S::from_gaussian(d.lambda.as_ref().unwrap());
    let eps = || S::from_int(d.eps.unwrap() as i64);
    let minus_one_pow = |j: usize| if j % 2 == 0 { -S::one() } else { S::one() };
    Ok(match d.family {
        CM1 | CMI1 => Summand::Matrix(tridiag(n, |_| S::zero(), |_| S::one(), |_| lam())),
        CM2 => Summand::Matrix(tridiag(n, |i| first_only(i, &eps()), |_| S::one(), minus_one_pow)),
        CM3 => Summand::Matrix(tridiag(n, |_| S::zero(), |_| S::one(), |j| -minus_one_pow(j))),
        CMI2 => {
            let mut m = S::from_gaussian(d.mu.as_ref().unwrap());
            if d.sign == SignTag::Minus {
                m = -m;
            }
            let q = tridiag(n, |i| first_only(i, &o), |_| S::one(), minus_one_pow);
            Summand::Matrix(q.scale(&m))
        }
        SSS1N => Summand::Pair(sym_alt(n, &z, &o, &z), sym_alt(n, &eps(), &lam(), &o)),
        SSNEW => Summand::Pair(sym_alt(n, &z, &o, &z), sym_alt(n, &z, &z, &o)),
        SS2N => Summand::Pair(sym_alt(n, &o, &z, &o), sym_alt(n, &lam(), &o, &lam())),
        LYG => {
            let nn = build_n::<S>(n)?;
            Summand::Pair(ExactMatrix::identity(n), ExactMatrix::identity(n).scale(&lam()).add(&nn))
        }
        NN_IDENT => Summand::Pair(build_n::<S>(n)?, ExactMatrix::identity(n)),
        SC1 => Summand::Pair(sym_alt(n, &z, &o, &o), skew_alt(n, &lam(), &lam())),
        SC2 => Summand::Pair(sym_alt(n, &eps(), &z, &o), skew_alt(n, &o, &z)),
        SC3 => Summand::Pair(sym_alt(n, &z, &o, &z), skew_alt(n, &z, &o)),
        CC1 => Summand::Pair(skew_alt(n, &o, &z), skew_alt(n, &lam(), &o)),
        CC23 => Summand::Pair(skew_alt(n, &z, &o), skew_alt(n, &o, &z)),
        HE1 => {
            let m = S::from_gaussian(d.mu.as_ref().unwrap());
            let mbar = m.conj();
            Summand::Pair(sym_alt(n, &z, &o, &o), tridiag(n, |_| S::zero(), |_| m.clone(), |_| mbar.clone()))
        }
        HE2 => {
            let (a, b) = he2_ab::<S>(n, d.c.as_ref().unwrap(), d.sign)?;
            Summand::Pair(sym_alt(n, &a, &b, &a), sym_alt(n, &b, &-a.clone(), &b))
        }
    })
}

/// Direct sum of materialized descriptors (all matrices or all pairs).
pub fn materialize_all<S: Scalar>(ds: &[SummandDescriptor]) -> Result<Summand<S>> {
    let mut iter = ds.iter();
    let first = iter.next().ok_or_else(|| Error::Precondition("empty decomposition".into()))?;
    let mut acc = materialize::<S>(first)?;
    for d in iter {
        acc = acc.direct_sum(&materialize::<S>(d)?)?;
    }
    Ok(acc)
}

/// Row and column orders of the permutation `P` (0-based): the result is
/// `new[r][c] = A[rows[r]][cols[c]]`.
pub fn p_transform_orders(n: usize) -> (Vec<usize>, Vec<usize>) {
    let evens_desc: Vec<usize> = (1..=n).rev().filter(|x| x % 2 == 0).collect();
    let odds_desc: Vec<usize> = (1..=n).rev().filter(|x| x % 2 == 1).collect();
    let evens_asc: Vec<usize> = (1..=n).filter(|x| x % 2 == 0).collect();
    let odds_asc: Vec<usize> = (1..=n).filter(|x| x % 2 == 1).collect();
    let (rows, cols): (Vec<usize>, Vec<usize>) = if n % 2 == 1 {
        (evens_desc.into_iter().chain(odds_asc).collect(), odds_desc.into_iter().chain(evens_asc).collect())
    } else {
        (odds_desc.into_iter().chain(evens_asc).collect(), evens_desc.into_iter().chain(odds_asc).collect())
    };
    (rows.into_iter().map(|x| x - 1).collect(), cols.into_iter().map(|x| x - 1).collect())
}

/// The row/column rearrangement taking a tridiagonal matrix with zero
/// diagonal (except possibly its first entry) to bidiagonal staircase form.
pub fn p_transform<S: Scalar>(a: &ExactMatrix<S>) -> Result<ExactMatrix<S>> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    if !a.is_tridiagonal() {
        return Err(Error::Precondition("p_transform needs a tridiagonal matrix".into()));
    }
    if (1..a.rows()).any(|i| !a.get(i, i).is_zero()) {
        return Err(Error::Precondition("p_transform needs a zero diagonal after the first entry".into()));
    }
    let (rows, cols) = p_transform_orders(a.rows());
    a.permute_rows(&rows)?.permute_cols(&cols)
}

/// `((A + A^T)/2, (A - A^T)/2)`.
pub fn sym_skew_split<S: Scalar>(a: &ExactMatrix<S>) -> Result<(ExactMatrix<S>, ExactMatrix<S>)> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let half = S::from_gaussian(&GaussianRational::from_ratio(1, 2));
    let t = a.transpose();
    Ok((a.add(&t).scale(&half), a.sub(&t).scale(&half)))
}

/// Cartesian decomposition `A = B + iC` with `B = (A + A^*)/2` and
/// `C = i(A^* - A)/2`, both Hermitian.
pub fn cartesian_split<S: Scalar>(a: &ExactMatrix<S>) -> Result<(ExactMatrix<S>, ExactMatrix<S>)> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let half = S::from_gaussian(&GaussianRational::from_ratio(1, 2));
    let half_i = S::from_gaussian(&GaussianRational::from_parts(0, 1, 1, 2));
    let h = a.conjugate_transpose();
    Ok((a.add(&h).scale(&half), h.sub(a).scale(&half_i)))
}

/// Which parameter substitution to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuMap {
    /// `lambda = (1 - mu)/(1 + mu)`, an involution (real congruence case).
    Congruence,
    /// `mu = (conj(lambda) - 1)/(conj(lambda) + 1) * i` (Hermitian case).
    Hermitian,
}

/// Forward substitution. For [`MuMap::Congruence`] the argument is `mu`
/// and the result `lambda`; for [`MuMap::Hermitian`] the argument is
/// `lambda` and the result `mu`.
pub fn mu_from_lambda(map: MuMap, x: &GaussianRational) -> Result<GaussianRational> {
    let one = g_int(1);
    match map {
        MuMap::Congruence => {
            let den = one.clone() + x;
            let inv = den.recip().ok_or(Error::DivisionByZero)?;
            Ok((one - x) * &inv)
        }
        MuMap::Hermitian => {
            let lb = x.conjugate();
            let inv = (lb.clone() + &one).recip().ok_or(Error::DivisionByZero)?;
            Ok((lb - one) * &inv * &GaussianRational::i())
        }
    }
}

/// Inverse substitution: the congruence map is its own inverse; the
/// Hermitian inverse is `lambda = (i - conj(mu))/(i + conj(mu))`.
pub fn lambda_from_mu(map: MuMap, y: &GaussianRational) -> Result<GaussianRational> {
    match map {
        MuMap::Congruence => mu_from_lambda(map, y),
        MuMap::Hermitian => {
            let i = GaussianRational::i();
            let mb = y.conjugate();
            let inv = (i.clone() + &mb).recip().ok_or(Error::DivisionByZero)?;
            Ok((i - mb) * &inv)
        }
    }
}

/// The `(a, b)` sign flip of HE2 and the `mu -> -mu` flip of CMI2 leave the
/// pencil unchanged; everything else about a descriptor is a pencil
/// invariant. Convenience check used by tests.
pub fn multiset_eq_up_to_sign(a: &[SummandDescriptor], b: &[SummandDescriptor]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let norm = |v: &[SummandDescriptor]| {
        let mut v: Vec<SummandDescriptor> = v.iter().map(SummandDescriptor::with_unknown_sign).collect();
        v.sort();
        v
    };
    norm(a) == norm(b)
}


/// Parameter values sampled for every family where they are legal.
pub const SAMPLE_PARAMS: [&str; 6] = ["0", "2", "-1/2", "i", "1+i", "3/5+4/5i"];

/// A representative sample of every family up to size `max_n`, used to
/// check the Kronecker tables.
pub fn table_samples(max_n: usize) -> Vec<SummandDescriptor> {
    let g = |s: &str| s.parse::<GaussianRational>().expect("literal");
    let q = |s: &str| CParam::Finite(parse_rational(s).expect("literal"));
    let mut out = Vec::new();
    let mut push = |d: Result<SummandDescriptor>| {
        if let Ok(d) = d {
            if !out.contains(&d) {
                out.push(d);
            }
        }
    };
    for n in 1..=max_n {
        for l in SAMPLE_PARAMS {
            push(SummandDescriptor::cm1(n, g(l)));
            push(SummandDescriptor::cc1(n, g(l)));
            push(SummandDescriptor::lyg(n, g(l)));
            push(SummandDescriptor::sss1n(n, Some(1), Some(g(l))));
            push(SummandDescriptor::ss2n(n, Some(g(l))));
            push(SummandDescriptor::sc1(n, g(l)));
        }
        for l in SAMPLE_PARAMS.iter().chain(&["2+i", "-3i"]) {
            push(SummandDescriptor::cmi1(n, g(l)));
        }
        for e in [0, 1] {
            push(SummandDescriptor::cm2(n, e));
            push(SummandDescriptor::sc2(n, e));
            push(SummandDescriptor::sss1n(n, Some(e), None));
        }
        push(SummandDescriptor::cm3(n));
        push(SummandDescriptor::sc3(n));
        push(SummandDescriptor::cc23(n));
        push(SummandDescriptor::nn_ident(n));
        push(SummandDescriptor::ssnew(n));
        push(SummandDescriptor::ss2n(n, None));
        for sign in [SignTag::Plus, SignTag::Minus] {
            for m in ["1", "-1", "i", "3/5+4/5i", "-3/5+4/5i"] {
                push(SummandDescriptor::cmi2(n, g(m), sign));
            }
            for c in [q("0"), q("2"), q("-1/2"), q("3/4"), q("-1"), CParam::Infinite] {
                push(SummandDescriptor::he2(n, c, sign));
            }
        }
        for m in SAMPLE_PARAMS.iter().chain(&["-1/2-i"]) {
            push(SummandDescriptor::he1(n, g(m), SignTag::Plus));
        }
    }
    out
}
