//! Root data of compact simply connected simple Lie groups.
//!
//! Weights are stored as integer Dynkin labels, so `⟨λ, α_i∨⟩` is read off
//! directly. The basic inner product `(·|·)` is normalized so that long
//! roots have squared length 2; its Gram matrix on fundamental weights is
//! kept as exact rationals.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::characters::TorusPoint;
use crate::error::{Error, Result};

pub type Q = Rational64;

/// Groups whose Weyl group exceeds this order are rejected.
pub const WEYL_ORDER_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple Cartan type such as `A2` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        let ct = CartanType { family, rank };
        if ok {
            Ok(ct)
        } else {
            Err(Error::UnsupportedGroup(ct.to_string()))
        }
    }

    /// Order of the Weyl group, saturating at `u64::MAX`.
    pub fn weyl_order(&self) -> u64 {
        let fact = |n: usize| (1..=n as u64).fold(1u64, |acc, x| acc.saturating_mul(x));
        let r = self.rank;
        match self.family {
            Family::A => fact(r + 1),
            Family::B | Family::C => fact(r).saturating_mul(1u64 << r.min(63)),
            Family::D => fact(r).saturating_mul(1u64 << (r - 1).min(63)),
            Family::E => match r {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1_152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedGroup(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest.parse().map_err(|_| bad())?;
        CartanType::new(family, rank).map_err(|_| bad())
    }
}

/// An integral weight in Dynkin labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `ϖ_i` (zero-based index).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i] = 1;
        w
    }

    pub fn labels(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn scale(&self, c: i64) -> Self {
        Weight(self.0.iter().map(|x| c * x).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::ParseWeight(s.to_string()))?;
        if labels.is_empty() {
            return Err(Error::ParseWeight(s.to_string()));
        }
        Ok(Weight(labels))
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// A rational element of the Cartan subalgebra, in simple coroot
/// coordinates: `ξ = Σ c_i α_i∨`, so that `⟨ν, ξ⟩ = Σ c_i ν_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coweight(pub Vec<Q>);

impl Coweight {
    pub fn pair(&self, nu: &Weight) -> Q {
        self.0
            .iter()
            .zip(nu.labels())
            .fold(Q::zero(), |acc, (c, &n)| acc + c * n)
    }

    pub fn pair_rational(&self, nu: &[Q]) -> Q {
        self.0.iter().zip(nu).fold(Q::zero(), |acc, (c, n)| acc + c * n)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// `B_l(α_i∨, α_j∨)` for a fixed level `l`.
///
/// The restriction of the level-`l` class to the torus is
/// `−Σ_ij B_l(α_i∨, α_j∨) ϖ_i ⊗ ϖ_j`; the entries are stored without the
/// overall minus sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingMatrix {
    pub level: u64,
    pub entries: Vec<Vec<i64>>,
}

impl PairingMatrix {
    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

/// Static Lie data for one simple type.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// `cartan[i][j] = ⟨α_j, α_i∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// `(α_i|α_i)`, long roots normalized to 2.
    pub root_lengths: Vec<Q>,
    /// Positive roots in Dynkin labels, ordered by height then root coordinates.
    pub positive_roots: Vec<Weight>,
    /// The same roots in simple-root coordinates.
    pub positive_root_coords: Vec<Vec<i64>>,
    pub theta: Weight,
    /// `a_i∨ = ⟨ϖ_i, θ∨⟩`.
    pub comarks: Vec<i64>,
    pub rho: Weight,
    pub dual_coxeter: i64,
    /// `gram[i][j] = (ϖ_i|ϖ_j)`.
    pub gram: Vec<Vec<Q>>,
    gram_numerators: Vec<Vec<i64>>,
    gram_denominator: i64,
    coroot_gram: Vec<Vec<i64>>,
}

fn simple_root_products(ct: CartanType) -> Vec<Vec<Q>> {
    let r = ct.rank;
    let q = |n: i64, d: i64| Q::new(n, d);
    let mut m = vec![vec![Q::zero(); r]; r];
    let link = |m: &mut Vec<Vec<Q>>, i: usize, j: usize, v: Q| {
        m[i][j] = v;
        m[j][i] = v;
    };
    match ct.family {
        Family::A | Family::D | Family::E => {
            for i in 0..r {
                m[i][i] = q(2, 1);
            }
            match ct.family {
                Family::A => (0..r - 1).for_each(|i| link(&mut m, i, i + 1, q(-1, 1))),
                Family::D => {
                    (0..r - 2).for_each(|i| link(&mut m, i, i + 1, q(-1, 1)));
                    link(&mut m, r - 3, r - 1, q(-1, 1));
                }
                _ => {
                    // Bourbaki: 1-3-4-5-..., 2-4
                    link(&mut m, 0, 2, q(-1, 1));
                    link(&mut m, 1, 3, q(-1, 1));
                    (2..r - 1).for_each(|i| link(&mut m, i, i + 1, q(-1, 1)));
                }
            }
        }
        Family::B => {
            for i in 0..r - 1 {
                m[i][i] = q(2, 1);
            }
            m[r - 1][r - 1] = q(1, 1);
            (0..r - 1).for_each(|i| link(&mut m, i, i + 1, q(-1, 1)));
        }
        Family::C => {
            for i in 0..r - 1 {
                m[i][i] = q(1, 1);
            }
            m[r - 1][r - 1] = q(2, 1);
            (0..r - 2).for_each(|i| link(&mut m, i, i + 1, q(-1, 2)));
            link(&mut m, r - 2, r - 1, q(-1, 1));
        }
        Family::F => {
            m[0][0] = q(2, 1);
            m[1][1] = q(2, 1);
            m[2][2] = q(1, 1);
            m[3][3] = q(1, 1);
            link(&mut m, 0, 1, q(-1, 1));
            link(&mut m, 1, 2, q(-1, 1));
            link(&mut m, 2, 3, q(-1, 2));
        }
        Family::G => {
            m[0][0] = q(2, 3);
            m[1][1] = q(2, 1);
            link(&mut m, 0, 1, q(-1, 1));
        }
    }
    m
}

pub(crate) fn invert_rational(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Exact integer determinant (fraction-free Bareiss elimination).
pub(crate) fn determinant(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

impl RootDatum {
    pub fn from_label(label: &str) -> Result<Self> {
        let ct: CartanType = label.parse()?;
        build_root_datum(ct.family, ct.rank)
    }

    /// Labels of the simple root `α_i`: `⟨α_i, α_j∨⟩ = cartan[j][i]`.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|j| self.cartan[j][i]).collect())
    }

    /// Dynkin labels of a vector given in simple-root coordinates.
    pub fn root_coords_to_labels(&self, coords: &[i64]) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| (0..self.rank).map(|j| coords[j] * self.cartan[i][j]).sum())
                .collect(),
        )
    }

    /// `⟨λ, θ∨⟩`.
    pub fn level_of(&self, w: &Weight) -> i64 {
        w.labels().iter().zip(&self.comarks).map(|(a, b)| a * b).sum()
    }

    pub fn is_level_weight(&self, w: &Weight, k: u32) -> bool {
        w.rank() == self.rank && w.is_dominant() && self.level_of(w) <= k as i64
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.rank, found: w.rank() })
        }
    }

    /// `D·(λ|μ)` as an exact integer, where `D` is [`Self::gram_denominator`].
    pub fn scaled_inner_product(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = &self.gram_numerators[i];
            s += x * row.iter().zip(b).map(|(g, y)| g * y).sum::<i64>();
        }
        s
    }

    pub fn gram_denominator(&self) -> i64 {
        self.gram_denominator
    }

    /// `(α_i∨|α_j∨)`.
    pub fn coroot_gram(&self) -> &[Vec<i64>] {
        &self.coroot_gram
    }

    /// Inner product with a rational weight (labels as rationals).
    pub fn inner_product_rational(&self, a: &[Q], b: &[Q]) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    /// Number of positive roots.
    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `(α|α)` for each positive root.
    pub fn root_norm(&self, root: &Weight) -> Q {
        Q::new(self.scaled_inner_product(root.labels(), root.labels()), self.gram_denominator)
    }

    /// Checks every structural invariant of the datum and reports the first
    /// violation.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let r = self.rank;
        for i in 0..r {
            if self.cartan[i][i] != 2 {
                return Err(format!("cartan[{i}][{i}] != 2"));
            }
            for j in 0..r {
                if i != j && !(-3..=0).contains(&self.cartan[i][j]) {
                    return Err(format!("cartan[{i}][{j}] out of range"));
                }
                if self.gram[i][j] != self.gram[j][i] {
                    return Err("gram matrix not symmetric".into());
                }
            }
        }
        let tt = inner_product(self, &self.theta, &self.theta).map_err(|e| e.to_string())?;
        if tt != Q::from_integer(2) {
            return Err(format!("(θ|θ) = {tt}, expected 2"));
        }
        let rt = inner_product(self, &self.rho, &self.theta).map_err(|e| e.to_string())?;
        if Q::from_integer(self.dual_coxeter) != rt + 1 {
            return Err("h∨ != 1 + (ρ|θ)".into());
        }
        if self.rho.labels().iter().any(|&x| x != 1) {
            return Err("ρ must have all labels 1".into());
        }
        // Leading principal minors of the Gram matrix must be positive.
        for size in 1..=r {
            let sub: Vec<Vec<Q>> = (0..size).map(|i| self.gram[i][..size].to_vec()).collect();
            if rational_det(&sub) <= Q::zero() {
                return Err(format!("gram minor of size {size} not positive"));
            }
        }
        Ok(())
    }
}

fn rational_det(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for j in c..n {
                let v = m[c][j];
                m[r][j] -= f * v;
            }
        }
    }
    det
}

/// Builds the full root datum for a simple type.
pub fn build_root_datum(family: Family, rank: usize) -> Result<RootDatum> {
    let ct = CartanType::new(family, rank)?;
    let order = ct.weyl_order();
    if order > WEYL_ORDER_CAP {
        return Err(Error::WeylGroupTooLarge { group: ct.to_string(), order, cap: WEYL_ORDER_CAP });
    }
    let r = rank;
    let products = simple_root_products(ct);
    let root_lengths: Vec<Q> = (0..r).map(|i| products[i][i]).collect();
    let cartan: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let v = products[j][i] * Q::from_integer(2) / products[i][i];
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();

    // Reflection closure in simple-root coordinates.
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..r {
            let c: i64 = (0..r).map(|j| beta[j] * cartan[i][j]).sum();
            if c == 0 {
                continue;
            }
            let mut image = beta.clone();
            image[i] -= c;
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut positive: Vec<Vec<i64>> = seen.into_iter().filter(|b| b.iter().all(|&x| x >= 0)).collect();
    positive.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    let to_labels = |coords: &[i64]| -> Weight {
        Weight((0..r).map(|i| (0..r).map(|j| coords[j] * cartan[i][j]).sum()).collect())
    };
    let positive_roots: Vec<Weight> = positive.iter().map(|c| to_labels(c)).collect();
    let theta_coords = positive.last().expect("at least one positive root").clone();
    let theta = to_labels(&theta_coords);

    let comarks: Vec<i64> = (0..r)
        .map(|i| {
            let v = Q::from_integer(theta_coords[i]) * root_lengths[i] / Q::from_integer(2);
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();

    // gram = diag((α_i|α_i)/2) · A⁻¹, with A[m][j] = cartan[m][j].
    let a_rat: Vec<Vec<Q>> =
        cartan.iter().map(|row| row.iter().map(|&x| Q::from_integer(x)).collect()).collect();
    let a_inv = invert_rational(&a_rat).expect("Cartan matrix is invertible");
    let gram: Vec<Vec<Q>> = (0..r)
        .map(|i| (0..r).map(|j| root_lengths[i] / Q::from_integer(2) * a_inv[i][j]).collect())
        .collect();
    let gram_denominator = gram.iter().flatten().fold(1i64, |acc, q| acc.lcm(q.denom()));
    let gram_numerators: Vec<Vec<i64>> = gram
        .iter()
        .map(|row| row.iter().map(|q| (q * gram_denominator).to_integer()).collect())
        .collect();

    let coroot_gram: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let v = Q::from_integer(4) * products[i][j] / (root_lengths[i] * root_lengths[j]);
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();

    let rho = Weight(vec![1; r]);
    let mut datum = RootDatum {
        cartan_type: ct,
        rank: r,
        cartan,
        root_lengths,
        positive_roots,
        positive_root_coords: positive,
        theta,
        comarks,
        rho,
        dual_coxeter: 0,
        gram,
        gram_numerators,
        gram_denominator,
        coroot_gram,
    };
    let rho_theta = Q::new(
        datum.scaled_inner_product(datum.rho.labels(), datum.theta.labels()),
        datum.gram_denominator,
    );
    debug_assert!(rho_theta.is_integer());
    datum.dual_coxeter = 1 + rho_theta.to_integer();
    Ok(datum)
}

/// The basic inner product `(λ|μ)`.
pub fn inner_product(datum: &RootDatum, lambda: &Weight, mu: &Weight) -> Result<Q> {
    datum.check_rank(lambda)?;
    datum.check_rank(mu)?;
    Ok(Q::new(datum.scaled_inner_product(lambda.labels(), mu.labels()), datum.gram_denominator))
}

/// All level-`k` weights (dominant with `⟨λ, θ∨⟩ ≤ k`) in lexicographic
/// order of labels.
pub fn level_k_weights(datum: &RootDatum, k: u32) -> Vec<Weight> {
    fn go(comarks: &[i64], budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<Weight>) {
        let i = prefix.len();
        if i == comarks.len() {
            out.push(Weight(prefix.clone()));
            return;
        }
        for x in 0..=budget / comarks[i] {
            prefix.push(x);
            go(comarks, budget - x * comarks[i], prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&datum.comarks, k as i64, &mut Vec::with_capacity(datum.rank), &mut out);
    out
}

/// `B_l(α_i∨, α_j∨)` as an integer matrix.
pub fn restriction_class(datum: &RootDatum, l: u64) -> PairingMatrix {
    let entries = datum
        .coroot_gram
        .iter()
        .map(|row| row.iter().map(|&x| x * l as i64).collect())
        .collect();
    PairingMatrix { level: l, entries }
}

/// `|T_l| = |B_l^♯(Λ*)/Λ|`, the determinant of `B_l^♭` from coroots to
/// fundamental weights.
pub fn torus_order(datum: &RootDatum, l: u64) -> u64 {
    determinant(&restriction_class(datum, l).entries).unsigned_abs() as u64
}

/// Whether the restriction class splits canonically: all `B_l(α_i∨, α_j∨)`
/// with `i < j` are even.
pub fn canonical_split_exists(datum: &RootDatum, l: u64) -> bool {
    let m = restriction_class(datum, l);
    let n = datum.rank;
    (0..n).all(|i| (i + 1..n).all(|j| m.entries[i][j] % 2 == 0))
}

fn ensure_level_weight(datum: &RootDatum, mu: &Weight, k: u32) -> Result<()> {
    datum.check_rank(mu)?;
    if datum.is_level_weight(mu, k) {
        Ok(())
    } else {
        Err(Error::NotLevelWeight { weight: mu.clone(), level: k })
    }
}

/// The special point `t_λ = exp(B_{k+h∨}^♯(λ+ρ))`.
pub fn t_lambda(datum: &RootDatum, lambda: &Weight, k: u32) -> Result<TorusPoint> {
    ensure_level_weight(datum, lambda, k)?;
    let shifted = lambda + &datum.rho;
    let numerators: Vec<i64> = (0..datum.rank)
        .map(|i| datum.gram_numerators[i].iter().zip(shifted.labels()).map(|(g, x)| g * x).sum())
        .collect();
    let denominator = datum.gram_denominator * (k as i64 + datum.dual_coxeter);
    Ok(TorusPoint::new(numerators, denominator))
}

/// The alcove point `ξ = B_k^♯(μ)` labelling the conjugacy class that is
/// pre-quantized at level `k` with weight `μ`.
///
/// At level 0 every class satisfies the integrality condition with `μ = 0`;
/// the identity class `ξ = 0` is returned.
pub fn prequantized_conjugacy_class(datum: &RootDatum, mu: &Weight, k: u32) -> Result<Coweight> {
    ensure_level_weight(datum, mu, k)?;
    if k == 0 {
        return Ok(Coweight(vec![Q::zero(); datum.rank]));
    }
    let kq = Q::from_integer(k as i64);
    let coords = (0..datum.rank)
        .map(|i| (0..datum.rank).fold(Q::zero(), |acc, j| acc + datum.gram[i][j] * mu.0[j]) / kq)
        .collect();
    Ok(Coweight(coords))
}

/// Whether `ξ` lies in the closed fundamental alcove.
pub fn in_closed_alcove(datum: &RootDatum, xi: &Coweight) -> bool {
    let simple_ok = (0..datum.rank).all(|i| xi.pair(&datum.simple_root(i)) >= Q::zero());
    simple_ok && xi.pair(&datum.theta) <= Q::one()
}

/// Whether `t` is regular: no root takes an integral value on `ξ`.
pub fn is_regular_coweight(datum: &RootDatum, xi: &Coweight) -> bool {
    datum.positive_roots.iter().all(|a| !xi.pair(a).is_integer())
}
