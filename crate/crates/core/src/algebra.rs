//! The magma algebra `K[X]` over the rationals, with the multiplication
//! `μ_∇` and twisting `τ_α` extended (bi)linearly from a partial table and a
//! partial map. Undefined products and images go to the zero vector.
//!
//! Zero vectors and undefined cells are separate notions here; they only
//! meet in [`cross_check_grid`], which compares algebra-level predicates with
//! the magma-level ones.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::TableSpace;
use crate::error::{Error, Result};
use crate::partial::{Element, PartialMagma, PartialMap, Point, Points, Shape};
use crate::predicates::{check, PredicateKind};
use crate::verify::{Check, Status, VerificationOutcome};
use crate::Limits;

pub type Rational = BigRational;

/// An element `Σ k_x e_x` of `K[X]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalVector {
    coeffs: Vec<Rational>,
}

impl RationalVector {
    pub fn zero(order: usize) -> Self {
        RationalVector {
            coeffs: vec![Rational::zero(); order],
        }
    }

    /// The basis vector `e_x`.
    pub fn basis(x: Element, order: usize) -> Self {
        let mut v = RationalVector::zero(order);
        v.coeffs[x.index()] = Rational::one();
        v
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        RationalVector { coeffs }
    }

    /// Integer coefficients, convenient in tests.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        RationalVector {
            coeffs: coeffs
                .iter()
                .map(|&k| Rational::from_integer(BigInt::from(k)))
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, x: Element) -> &Rational {
        &self.coeffs[x.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RationalVector {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn add_scaled(&mut self, x: Element, k: &Rational) {
        self.coeffs[x.index()] += k;
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(self.order(), other.order(), "vector orders differ");
        RationalVector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: Self) -> RationalVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: Self) -> RationalVector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&RationalVector> for &Rational {
    type Output = RationalVector;
    fn mul(self, rhs: &RationalVector) -> RationalVector {
        rhs.scale(self)
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Written as `3e1 - 1/2e2`; the zero vector prints as `0`.
impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "e{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The triple `(K[X], μ_∇, τ_α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomAlgebra {
    magma: PartialMagma,
    alpha: PartialMap,
}

/// The algebra-level identities, each paired with its magma-level
/// counterpart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraPredicate {
    Multiplicative,
    PartiallyMultiplicative,
    HomAssociative,
    PartiallyHomAssociative,
    PartiallyAssociative,
    Associative,
}

impl AlgebraPredicate {
    pub const ALL: [AlgebraPredicate; 6] = [
        AlgebraPredicate::Multiplicative,
        AlgebraPredicate::PartiallyMultiplicative,
        AlgebraPredicate::HomAssociative,
        AlgebraPredicate::PartiallyHomAssociative,
        AlgebraPredicate::PartiallyAssociative,
        AlgebraPredicate::Associative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraPredicate::Multiplicative => "multiplicative",
            AlgebraPredicate::PartiallyMultiplicative => "partially-multiplicative",
            AlgebraPredicate::HomAssociative => "hom-associative",
            AlgebraPredicate::PartiallyHomAssociative => "partially-hom-associative",
            AlgebraPredicate::PartiallyAssociative => "partially-associative",
            AlgebraPredicate::Associative => "associative",
        }
    }

    /// The magma predicate it is equivalent to.
    pub fn counterpart(self) -> PredicateKind {
        match self {
            AlgebraPredicate::Multiplicative => PredicateKind::PartialEndo,
            AlgebraPredicate::PartiallyMultiplicative => PredicateKind::WeakPartialEndo,
            AlgebraPredicate::HomAssociative => PredicateKind::HomAssoc,
            AlgebraPredicate::PartiallyHomAssociative => PredicateKind::PartialHomAssoc,
            AlgebraPredicate::PartiallyAssociative => PredicateKind::PartialAssoc,
            AlgebraPredicate::Associative => PredicateKind::Assoc,
        }
    }

    fn partial(self) -> bool {
        matches!(
            self,
            AlgebraPredicate::PartiallyMultiplicative
                | AlgebraPredicate::PartiallyHomAssociative
                | AlgebraPredicate::PartiallyAssociative
        )
    }
}

impl fmt::Display for AlgebraPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A basis tuple where the two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisViolation {
    pub point: Point,
    pub left: RationalVector,
    pub right: RationalVector,
}

impl fmt::Display for BasisViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self.point.iter().map(|x| format!("e{x}")).collect();
        write!(
            f,
            "at ({}): left {}, right {}",
            basis.join(","),
            self.left,
            self.right
        )
    }
}

impl HomAlgebra {
    pub fn new(magma: PartialMagma, alpha: PartialMap) -> Result<Self> {
        Error::check_orders(magma.order(), alpha.order())?;
        Ok(HomAlgebra { magma, alpha })
    }

    pub fn order(&self) -> usize {
        self.magma.order()
    }

    pub fn magma(&self) -> &PartialMagma {
        &self.magma
    }

    pub fn alpha(&self) -> &PartialMap {
        &self.alpha
    }

    fn check_vector(&self, v: &RationalVector) -> Result<()> {
        Error::check_orders(self.order(), v.order())
    }

    /// `τ_α(v)`.
    pub fn tau(&self, v: &RationalVector) -> Result<RationalVector> {
        self.check_vector(v)?;
        Ok(self.tau_unchecked(v))
    }

    /// `μ_∇(a, b)`.
    pub fn mu(&self, a: &RationalVector, b: &RationalVector) -> Result<RationalVector> {
        self.check_vector(a)?;
        self.check_vector(b)?;
        Ok(self.mu_unchecked(a, b))
    }

    fn tau_unchecked(&self, v: &RationalVector) -> RationalVector {
        let mut out = RationalVector::zero(self.order());
        for (x, k) in crate::partial::elements(self.order()).zip(&v.coeffs) {
            if let (Some(y), false) = (self.alpha.apply(x), k.is_zero()) {
                out.add_scaled(y, k);
            }
        }
        out
    }

    fn mu_unchecked(&self, a: &RationalVector, b: &RationalVector) -> RationalVector {
        let n = self.order();
        let mut out = RationalVector::zero(n);
        for (x, ka) in crate::partial::elements(n).zip(&a.coeffs) {
            if ka.is_zero() {
                continue;
            }
            for (y, kb) in crate::partial::elements(n).zip(&b.coeffs) {
                if let (Some(z), false) = (self.magma.product(x, y), kb.is_zero()) {
                    out.add_scaled(z, &(ka * kb));
                }
            }
        }
        out
    }

    /// `τ(a·b)` and `τa·τb`.
    fn multiplicative_sides(&self, a: &RationalVector, b: &RationalVector) -> [RationalVector; 2] {
        [
            self.tau_unchecked(&self.mu_unchecked(a, b)),
            self.mu_unchecked(&self.tau_unchecked(a), &self.tau_unchecked(b)),
        ]
    }

    /// `τa·(b·c)` and `(a·b)·τc`.
    fn hom_associative_sides(
        &self,
        a: &RationalVector,
        b: &RationalVector,
        c: &RationalVector,
    ) -> [RationalVector; 2] {
        [
            self.mu_unchecked(&self.tau_unchecked(a), &self.mu_unchecked(b, c)),
            self.mu_unchecked(&self.mu_unchecked(a, b), &self.tau_unchecked(c)),
        ]
    }

    /// `a·(b·c)` and `(a·b)·c`.
    fn associative_sides(
        &self,
        a: &RationalVector,
        b: &RationalVector,
        c: &RationalVector,
    ) -> [RationalVector; 2] {
        [
            self.mu_unchecked(a, &self.mu_unchecked(b, c)),
            self.mu_unchecked(&self.mu_unchecked(a, b), c),
        ]
    }

    /// The first basis tuple violating `pred`. Full predicates compare every
    /// tuple, zero results included; partial ones only tuples where both
    /// sides are nonzero.
    pub fn first_violation(&self, pred: AlgebraPredicate) -> Option<BasisViolation> {
        let n = self.order();
        let arity = match pred {
            AlgebraPredicate::Multiplicative | AlgebraPredicate::PartiallyMultiplicative => 2,
            _ => 3,
        };
        let e = |x: Element| RationalVector::basis(x, n);
        Points::new(Shape { order: n, arity }).find_map(|point| {
            let [left, right] = match pred {
                AlgebraPredicate::Multiplicative | AlgebraPredicate::PartiallyMultiplicative => {
                    self.multiplicative_sides(&e(point[0]), &e(point[1]))
                }
                AlgebraPredicate::HomAssociative | AlgebraPredicate::PartiallyHomAssociative => {
                    self.hom_associative_sides(&e(point[0]), &e(point[1]), &e(point[2]))
                }
                AlgebraPredicate::PartiallyAssociative | AlgebraPredicate::Associative => {
                    self.associative_sides(&e(point[0]), &e(point[1]), &e(point[2]))
                }
            };
            let skipped = pred.partial() && (left.is_zero() || right.is_zero());
            (!skipped && left != right).then_some(BasisViolation { point, left, right })
        })
    }

    pub fn holds(&self, pred: AlgebraPredicate) -> bool {
        self.first_violation(pred).is_none()
    }

    pub fn is_multiplicative(&self) -> bool {
        self.holds(AlgebraPredicate::Multiplicative)
    }

    pub fn is_partially_b_multiplicative(&self) -> bool {
        self.holds(AlgebraPredicate::PartiallyMultiplicative)
    }

    pub fn is_hom_associative(&self) -> bool {
        self.holds(AlgebraPredicate::HomAssociative)
    }

    pub fn is_partially_b_hom_associative(&self) -> bool {
        self.holds(AlgebraPredicate::PartiallyHomAssociative)
    }

    pub fn is_partially_b_associative(&self) -> bool {
        self.holds(AlgebraPredicate::PartiallyAssociative)
    }

    pub fn is_associative(&self) -> bool {
        self.holds(AlgebraPredicate::Associative)
    }
}

/// Numerators in `-9..=9`, denominators in `1..=9`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let num: i64 = rng.random_range(-9..=9);
    let den: i64 = rng.random_range(1..=9);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn random_vector(order: usize, rng: &mut impl Rng) -> RationalVector {
    RationalVector::from_coeffs((0..order).map(|_| random_rational(rng)).collect())
}

/// One sampled identity from [`randomized_identities`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledIdentity {
    pub trial: usize,
    pub predicate: AlgebraPredicate,
    pub inputs: Vec<RationalVector>,
    pub left: RationalVector,
    pub right: RationalVector,
}

impl SampledIdentity {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

/// Evaluates both sides of each full identity that holds on the basis at
/// `trials` random vector tuples. The draws depend only on `seed`.
pub fn randomized_identities(h: &HomAlgebra, trials: usize, seed: u64) -> Vec<SampledIdentity> {
    let preds: Vec<AlgebraPredicate> = [
        AlgebraPredicate::Multiplicative,
        AlgebraPredicate::HomAssociative,
        AlgebraPredicate::Associative,
    ]
    .into_iter()
    .filter(|&p| h.holds(p))
    .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = h.order();
    let mut out = Vec::new();
    for trial in 0..trials {
        let [a, b, c] = [(); 3].map(|_| random_vector(n, &mut rng));
        for &predicate in &preds {
            let ([left, right], inputs) = match predicate {
                AlgebraPredicate::Multiplicative => {
                    (h.multiplicative_sides(&a, &b), vec![a.clone(), b.clone()])
                }
                AlgebraPredicate::HomAssociative => (
                    h.hom_associative_sides(&a, &b, &c),
                    vec![a.clone(), b.clone(), c.clone()],
                ),
                _ => (
                    h.associative_sides(&a, &b, &c),
                    vec![a.clone(), b.clone(), c.clone()],
                ),
            };
            out.push(SampledIdentity {
                trial,
                predicate,
                inputs,
                left,
                right,
            });
        }
    }
    out
}

/// True when every sampled identity holds exactly.
pub fn randomized_bilinear_check(h: &HomAlgebra, trials: usize, seed: u64) -> bool {
    randomized_identities(h, trials, seed)
        .iter()
        .all(SampledIdentity::holds)
}

/// Outcome of [`randomized_sweep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSummary {
    /// Pairs with at least one full identity holding on the basis.
    pub instances: usize,
    pub identities_checked: usize,
    /// `(table, α)` codes of pairs where a sampled identity failed.
    pub failures: Vec<(String, String)>,
}

/// Runs [`randomized_identities`] on every `(table, α)` pair of the given
/// order. Pair `k` in enumeration order uses seed `seed + k`.
pub fn randomized_sweep(
    order: usize,
    trials: usize,
    seed: u64,
    limits: &Limits,
) -> Result<SweepSummary> {
    let space = TableSpace::new(order, false, limits)?;
    let maps = PartialMap::all(order)?;
    let per_pair: Vec<(usize, bool, String, String)> = (0..space.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let m = space.table(i);
            maps.iter()
                .enumerate()
                .map(|(j, alpha)| {
                    let h = HomAlgebra::new(m.clone(), alpha.clone()).expect("orders agree");
                    let k = i * maps.len() as u64 + j as u64;
                    let sampled = randomized_identities(&h, trials, seed.wrapping_add(k));
                    let ok = sampled.iter().all(SampledIdentity::holds);
                    (sampled.len(), ok, m.code().to_string(), alpha.code())
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(SweepSummary {
        instances: per_pair.iter().filter(|p| p.0 > 0).count(),
        identities_checked: per_pair.iter().map(|p| p.0).sum(),
        failures: per_pair
            .into_iter()
            .filter(|p| !p.1)
            .map(|(_, _, t, a)| (t, a))
            .collect(),
    })
}

/// Algebra-level vs magma-level verdict for one `(table, α)` pair.
fn compare_instance(m: &PartialMagma, alpha: &PartialMap) -> Result<Vec<Check>> {
    let h = HomAlgebra::new(m.clone(), alpha.clone())?;
    let mut checks = Vec::with_capacity(AlgebraPredicate::ALL.len());
    for pred in AlgebraPredicate::ALL {
        let algebra = h.first_violation(pred);
        let magma = check(m, alpha, pred.counterpart())?;
        let agree = algebra.is_none() == magma.holds();
        let detail = match (&algebra, magma.witness()) {
            _ if agree => None,
            (Some(v), None) => Some(format!("algebra fails {v}; magma holds")),
            (None, Some(w)) => Some(format!("algebra holds; magma fails {w}")),
            _ => unreachable!("verdicts disagree"),
        };
        checks.push(Check {
            section: "algebra-equivalence".into(),
            subject: format!("{} alpha {} {}", m.code(), alpha.code(), pred.name()),
            status: if agree {
                Status::Match
            } else {
                Status::Mismatch
            },
            expected: format!("{} {}", pred.counterpart(), magma.holds()),
            computed: format!("{} {}", pred, algebra.is_none()),
            detail,
        });
    }
    Ok(checks)
}

/// Summary of a grid comparison: how many `(table, α)` pairs agree on
/// every equivalence, and every disagreeing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSummary {
    pub pairs: usize,
    pub agreeing_pairs: usize,
    pub outcome: VerificationOutcome,
}

impl GridSummary {
    fn from_pairs(per_pair: Vec<Vec<Check>>, notes: Vec<String>) -> Self {
        let pairs = per_pair.len();
        let agreeing_pairs = per_pair
            .iter()
            .filter(|c| c.iter().all(|c| c.status == Status::Match))
            .count();
        let checks = per_pair
            .into_iter()
            .flatten()
            .filter(|c| c.status == Status::Mismatch)
            .collect();
        GridSummary {
            pairs,
            agreeing_pairs,
            outcome: VerificationOutcome { checks, notes },
        }
    }

    pub fn all_agree(&self) -> bool {
        self.pairs == self.agreeing_pairs
    }
}

/// Compares each algebra predicate with its magma counterpart for every
/// table of the given order and every partial map.
pub fn cross_check_grid(order: usize, limits: &Limits) -> Result<GridSummary> {
    let space = TableSpace::new(order, false, limits)?;
    let maps_needed = PartialMap::count(order).unwrap_or(u128::MAX);
    if maps_needed > limits.max_maps {
        return Err(Error::LimitExceeded {
            what: "number of partial maps",
            required: maps_needed,
            limit: limits.max_maps,
        });
    }
    let maps = PartialMap::all(order)?;
    let per_pair = (0..space.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let m = space.table(i);
            maps.iter()
                .map(|alpha| compare_instance(&m, alpha))
                .collect::<Vec<_>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GridSummary::from_pairs(per_pair, Vec::new()))
}

/// Same comparison on `samples` random `(table, α)` pairs, drawn from
/// `seed`. Meant for orders where the full grid is too large.
pub fn cross_check_sample(order: usize, samples: usize, seed: u64) -> Result<GridSummary> {
    if order == 0 || order > crate::partial::MAX_ORDER {
        return Err(Error::InvalidOrder(order));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cell = |rng: &mut ChaCha8Rng| {
        let d = rng.random_range(0..=order);
        (d < order).then(|| Element::from_index(d))
    };
    let cases = (0..samples)
        .map(|_| {
            let m = PartialMagma::new(order, (0..order * order).map(|_| cell(&mut rng)).collect())?;
            let alpha = PartialMap::new((0..order).map(|_| cell(&mut rng)).collect())?;
            Ok((m, alpha))
        })
        .collect::<Result<Vec<_>>>()?;
    let per_pair = cases
        .par_iter()
        .map(|(m, alpha)| compare_instance(m, alpha))
        .collect::<Result<Vec<_>>>()?;
    Ok(GridSummary::from_pairs(
        per_pair,
        vec![format!(
            "{samples} sampled pairs at order {order}, seed {seed}"
        )],
    ))
}
