//! Characters of irreducible representations.
//!
//! Torus points carry exact rational phases; a value `t^ν` is produced by
//! reducing the phase of `ν` modulo 1 first and only then exponentiating, so
//! alternating sums over `W` never accumulate phase drift.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{RootDatum, Weight, Q};
use crate::weyl::{dominant_reduce, WeylElement, WeylGroup};

pub type ComplexValue = Complex64;

/// Below this modulus the Weyl denominator is treated as vanishing.
pub const REGULARITY_THRESHOLD: f64 = 1e-9;

/// `e^{2πi j/n}` for an integer `j` already reduced modulo `n`.
pub fn root_of_unity(j: i64, n: i64) -> Complex64 {
    let j = j.rem_euclid(n);
    if (4 * j) % n == 0 {
        return match 4 * j / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let (s, c) = (TAU * j as f64 / n as f64).sin_cos();
    Complex64::new(c, s)
}

/// A torus element `exp(ξ)` with `ξ` rational: `ξ = Σ_i (p_i/N) α_i∨`, so
/// `t^ν = exp(2πi Σ ν_i p_i / N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusPoint {
    numerators: Vec<i64>,
    denominator: i64,
}

impl TorusPoint {
    pub fn new(numerators: Vec<i64>, denominator: i64) -> Self {
        assert!(denominator != 0, "torus point with zero denominator");
        let g = numerators.iter().fold(denominator.abs(), |acc, &x| acc.gcd(&x));
        let s = denominator.signum();
        TorusPoint {
            numerators: numerators.iter().map(|x| s * x / g).collect(),
            denominator: denominator.abs() / g,
        }
    }

    /// The point `exp(ξ)` for a rational coweight in coroot coordinates.
    pub fn from_coweight(xi: &crate::lie::Coweight) -> Self {
        let n = xi.0.iter().fold(1i64, |acc, q| acc.lcm(q.denom()));
        TorusPoint::new(xi.0.iter().map(|q| (q * n).to_integer()).collect(), n)
    }

    pub fn identity(rank: usize) -> Self {
        TorusPoint { numerators: vec![0; rank], denominator: 1 }
    }

    /// All phases lie in `(1/N)ℤ` for this `N`.
    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    /// `N · phase(ν)` reduced into `[0, N)`.
    pub fn phase_index(&self, labels: &[i64]) -> i64 {
        let s: i64 = labels.iter().zip(&self.numerators).map(|(a, b)| a * b).sum();
        s.rem_euclid(self.denominator)
    }

    /// The phase of `t^ν` in `[0, 1)`.
    pub fn phase(&self, nu: &Weight) -> Q {
        Q::new(self.phase_index(nu.labels()), self.denominator)
    }

    /// The phase of `t^ν` for a rational weight, reduced into `[0, 1)`.
    pub fn phase_rational(&self, labels: &[Q]) -> Q {
        let s = labels
            .iter()
            .zip(&self.numerators)
            .fold(Q::zero(), |acc, (a, &b)| acc + a * b)
            / self.denominator;
        s - s.floor()
    }

    pub fn value(&self, nu: &Weight) -> Complex64 {
        root_of_unity(self.phase_index(nu.labels()), self.denominator)
    }

    pub fn value_rational(&self, labels: &[Q]) -> Complex64 {
        let p = self.phase_rational(labels);
        root_of_unity(*p.numer(), *p.denom())
    }

    /// The point `w⁻¹·t`, characterized by `(w⁻¹·t)^ν = t^{wν}`.
    pub fn act_inverse(&self, w: &WeylElement) -> TorusPoint {
        let r = self.numerators.len();
        let numerators = (0..r)
            .map(|j| (0..r).map(|i| w.entry(i, j) * self.numerators[i]).sum())
            .collect();
        TorusPoint { numerators, denominator: self.denominator }
    }
}

/// `Σ_w (−1)^{l(w)} t^{w(ν)}`, summed in enumeration order.
pub fn alternating_sum(weyl: &WeylGroup, nu: &Weight, t: &TorusPoint) -> Complex64 {
    let mut buf = vec![0; weyl.rank];
    let mut acc = Complex64::zero();
    for w in weyl.iter() {
        w.apply_into(nu.labels(), &mut buf);
        let z = root_of_unity(t.phase_index(&buf), t.denominator());
        if w.sign() > 0 {
            acc += z;
        } else {
            acc -= z;
        }
    }
    acc
}

/// The Weyl denominator `J(t) = Σ_w (−1)^{l(w)} t^{wρ}`.
pub fn weyl_denominator(datum: &RootDatum, weyl: &WeylGroup, t: &TorusPoint) -> Complex64 {
    alternating_sum(weyl, &datum.rho, t)
}

/// `χ_μ(t)` by the Weyl character formula at a regular point.
pub fn character_value(
    datum: &RootDatum,
    weyl: &WeylGroup,
    mu: &Weight,
    t: &TorusPoint,
) -> Result<Complex64> {
    datum.check_rank(mu)?;
    let j = weyl_denominator(datum, weyl, t);
    if j.norm() <= REGULARITY_THRESHOLD {
        return Err(Error::NonRegularPoint { abs_denominator: j.norm() });
    }
    Ok(alternating_sum(weyl, &(mu + &datum.rho), t) / j)
}

/// `dim V_μ` from the Weyl dimension formula, in exact arithmetic.
pub fn weyl_dimension(datum: &RootDatum, mu: &Weight) -> u128 {
    let shifted = mu + &datum.rho;
    let mut acc = Ratio::<i128>::from_integer(1);
    for alpha in &datum.positive_roots {
        let num = datum.scaled_inner_product(alpha.labels(), shifted.labels()) as i128;
        let den = datum.scaled_inner_product(alpha.labels(), datum.rho.labels()) as i128;
        acc *= Ratio::new(num, den);
    }
    debug_assert!(acc.is_integer());
    acc.to_integer() as u128
}

/// Limits for highest-weight computations.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Upper bound on `(μ|μ)`.
    pub max_norm: Q,
    /// Upper bound on the number of dominant weights of a module.
    pub max_dominant_weights: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_norm: Q::from_integer(400), max_dominant_weights: 100_000 }
    }
}

/// A finite integer combination of irreducible characters, i.e. an element
/// of `R(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VirtualCharacter {
    terms: BTreeMap<Weight, i64>,
}

impl VirtualCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn irreducible(mu: Weight) -> Self {
        let mut x = Self::new();
        x.add_term(mu, 1);
        x
    }

    pub fn add_term(&mut self, mu: Weight, coeff: i64) {
        debug_assert!(mu.is_dominant());
        let entry = self.terms.entry(mu).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn coefficient(&self, mu: &Weight) -> i64 {
        self.terms.get(mu).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The virtual dimension `Σ c_μ dim V_μ`.
    pub fn dimension(&self, datum: &RootDatum) -> i128 {
        self.terms.iter().map(|(mu, &c)| c as i128 * weyl_dimension(datum, mu) as i128).sum()
    }
}

impl FromIterator<(Weight, i64)> for VirtualCharacter {
    fn from_iter<I: IntoIterator<Item = (Weight, i64)>>(iter: I) -> Self {
        let mut x = VirtualCharacter::new();
        for (mu, c) in iter {
            x.add_term(mu, c);
        }
        x
    }
}

/// Multiplicities of the dominant weights of `V_μ` (Freudenthal's formula).
pub fn weight_multiplicities(
    datum: &RootDatum,
    mu: &Weight,
    caps: &Caps,
) -> Result<BTreeMap<Weight, u64>> {
    datum.check_rank(mu)?;
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.clone()));
    }
    let d = datum.gram_denominator();
    let norm = Q::new(datum.scaled_inner_product(mu.labels(), mu.labels()), d);
    if norm > caps.max_norm {
        return Err(Error::CapExceeded(format!("(μ|μ) = {norm} exceeds {}", caps.max_norm)));
    }

    let heights: Vec<i64> = datum.positive_root_coords.iter().map(|c| c.iter().sum()).collect();
    // Dominant weights below μ, each reached by subtracting a positive root
    // from another dominant weight of the module.
    let mut depth: HashMap<Weight, i64> = HashMap::from([(mu.clone(), 0)]);
    let mut queue = VecDeque::from([mu.clone()]);
    while let Some(xi) = queue.pop_front() {
        let dx = depth[&xi];
        for (alpha, h) in datum.positive_roots.iter().zip(&heights) {
            let eta = &xi - alpha;
            if eta.is_dominant() && !depth.contains_key(&eta) {
                depth.insert(eta.clone(), dx + h);
                if depth.len() > caps.max_dominant_weights {
                    return Err(Error::CapExceeded(format!(
                        "more than {} dominant weights in V({mu})",
                        caps.max_dominant_weights
                    )));
                }
                queue.push_back(eta);
            }
        }
    }
    let mut order: Vec<(i64, Weight)> = depth.into_iter().map(|(w, h)| (h, w)).collect();
    order.sort();

    let rho = &datum.rho;
    let top = mu + rho;
    let top_norm = datum.scaled_inner_product(top.labels(), top.labels());
    let mut mult: HashMap<Weight, u64> = HashMap::new();
    for (_, xi) in order {
        if xi == *mu {
            mult.insert(xi, 1);
            continue;
        }
        let s = &xi + rho;
        let gap = top_norm - datum.scaled_inner_product(s.labels(), s.labels());
        let mut sum: i64 = 0;
        for alpha in &datum.positive_roots {
            let mut step = &xi + alpha;
            loop {
                let rep = dominant_reduce(datum, &step).weight;
                let Some(&m) = mult.get(&rep) else { break };
                sum += m as i64 * datum.scaled_inner_product(step.labels(), alpha.labels());
                step = &step + alpha;
            }
        }
        debug_assert!(gap > 0 && (2 * sum) % gap == 0);
        let m = 2 * sum / gap;
        if m > 0 {
            mult.insert(xi, m as u64);
        }
    }
    Ok(mult.into_iter().collect())
}

/// Every weight of `V_μ` with its multiplicity, as full Weyl orbits.
pub fn weight_system(datum: &RootDatum, mu: &Weight, caps: &Caps) -> Result<BTreeMap<Weight, u64>> {
    let dominant = weight_multiplicities(datum, mu, caps)?;
    let mut all = BTreeMap::new();
    for (xi, m) in dominant {
        let mut seen = HashSet::from([xi.clone()]);
        let mut queue = VecDeque::from([xi]);
        while let Some(w) = queue.pop_front() {
            for i in 0..datum.rank {
                let c = w.0[i];
                if c == 0 {
                    continue;
                }
                let image = &w - &datum.simple_root(i).scale(c);
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
            all.insert(w, m);
        }
    }
    Ok(all)
}

/// `χ_μ · χ_ν` in `R(G)` (Klimyk's formula with ρ-shifted dominant
/// reduction; singular terms drop out).
pub fn tensor_decompose(
    datum: &RootDatum,
    mu: &Weight,
    nu: &Weight,
    caps: &Caps,
) -> Result<VirtualCharacter> {
    datum.check_rank(mu)?;
    datum.check_rank(nu)?;
    // Iterate over the weights of the smaller module.
    let (big, small) = if weyl_dimension(datum, mu) >= weyl_dimension(datum, nu) { (mu, nu) } else { (nu, mu) };
    let shifted = big + &datum.rho;
    let mut out = VirtualCharacter::new();
    for (xi, m) in weight_system(datum, small, caps)? {
        let red = dominant_reduce(datum, &(&shifted + &xi));
        if red.singular {
            continue;
        }
        out.add_term(&red.weight - &datum.rho, red.sign * m as i64);
    }
    Ok(out)
}
