//! The level-k fusion ring `R_k(G)`.
//!
//! Elements are integer combinations of the basis `τ_μ`, `μ ∈ Λ*_k`. Every
//! element is determined by its values at the special points `t_λ`, and
//! coefficients are recovered from value vectors by the finite Fourier
//! transform
//!
//! ```text
//! N(μ) = |T_{k+h∨}|⁻¹ Σ_λ |J(t_λ)|² τ(t_λ) conj(τ_μ(t_λ)).
//! ```
//!
//! Structure constants are stored in the fully symmetric convention
//! `N_{μ,ν,λ} = (τ_μ τ_ν τ_λ)^G`, so that `τ_μ τ_ν = Σ_λ N_{μ,ν,λ} τ_{λ*}`.
//! Product decompositions returned by [`FusionContext::fusion_coefficients`]
//! are keyed by the label of the basis element in the product, i.e. the
//! coefficient of `τ_κ` in `τ_μ τ_ν` is `N_{μ,ν,κ*}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{character_value, root_of_unity, tensor_decompose, Caps, TorusPoint, VirtualCharacter};
use crate::error::{Error, Result};
use crate::lie::{level_k_weights, t_lambda, torus_order, Family, RootDatum, Weight};
use crate::weyl::{affine_reduce, AffineReduction};
use crate::Group;

/// Default bound on the rounding residual when extracting integers.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// An element of `R_k(G)` in the basis `τ_μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionElement {
    level: u32,
    terms: BTreeMap<Weight, i64>,
}

impl FusionElement {
    pub fn zero(level: u32) -> Self {
        FusionElement { level, terms: BTreeMap::new() }
    }

    /// Builds an element, rejecting any label outside `Λ*_k`.
    pub fn from_terms(
        datum: &RootDatum,
        level: u32,
        terms: impl IntoIterator<Item = (Weight, i64)>,
    ) -> Result<Self> {
        let mut x = FusionElement::zero(level);
        for (mu, c) in terms {
            datum.check_rank(&mu)?;
            if !datum.is_level_weight(&mu, level) {
                return Err(Error::NotLevelWeight { weight: mu, level });
            }
            x.add_term(mu, c);
        }
        Ok(x)
    }

    pub(crate) fn add_term(&mut self, mu: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(mu.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&mu);
        }
    }

    pub fn level(&self) -> u32 {
        self.level
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
}

impl fmt::Display for FusionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mu, c)) in self.terms.iter().enumerate() {
            let sep = match (i, *c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            f.write_str(sep)?;
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "τ({mu})")?;
        }
        Ok(())
    }
}

/// The projection `π: R(G) → R_k(G)`: each `χ_μ` goes to `±τ_{w•μ}` or 0.
pub fn project_to_fusion(datum: &RootDatum, x: &VirtualCharacter, k: u32) -> FusionElement {
    let mut out = FusionElement::zero(k);
    for (mu, &c) in x.terms() {
        if let AffineReduction::Alcove { weight, sign } = affine_reduce(datum, mu, k) {
            out.add_term(weight, sign * c);
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub struct FusionOptions {
    /// Bound on rounding residuals and imaginary parts when reading off
    /// integers.
    pub tolerance: f64,
    /// Worker threads for the character table; 1 computes serially.
    pub threads: usize,
}

impl Default for FusionOptions {
    fn default() -> Self {
        FusionOptions { tolerance: DEFAULT_TOLERANCE, threads: 1 }
    }
}

/// Character values `χ_μ(t_λ)` for all `μ, λ ∈ Λ*_k`, together with the
/// Weyl denominators `J(t_λ)`. Built once per `(group, k)` and read-only
/// afterwards.
#[derive(Debug, Clone)]
pub struct FusionContext<'g> {
    group: &'g Group,
    level: u32,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
    points: Vec<TorusPoint>,
    denominators: Vec<Complex64>,
    // table[μ][λ] = χ_μ(t_λ)
    table: Vec<Vec<Complex64>>,
    dual: Vec<usize>,
    torus_order: u64,
    tolerance: f64,
}

fn column(group: &Group, weights: &[Weight], t: &TorusPoint) -> (Complex64, Vec<Complex64>) {
    let r = group.rank();
    let n = t.denominator();
    // (w⁻¹t)^ν = t^{wν}, so phases of wν at t are pairings with these.
    let orbit: Vec<(i64, Vec<i64>)> =
        group.weyl.iter().map(|w| (w.sign(), t.act_inverse(w).numerators().to_vec())).collect();
    let alt = |labels: &[i64]| {
        let mut acc = Complex64::zero();
        for (sign, q) in &orbit {
            let j: i64 = labels.iter().zip(q).map(|(a, b)| a * b).sum();
            let z = root_of_unity(j.rem_euclid(n), n);
            if *sign > 0 {
                acc += z;
            } else {
                acc -= z;
            }
        }
        acc
    };
    let rho = &group.datum.rho;
    let j = alt(rho.labels());
    let mut shifted = vec![0; r];
    let values = weights
        .iter()
        .map(|mu| {
            for (s, (a, b)) in shifted.iter_mut().zip(mu.labels().iter().zip(rho.labels())) {
                *s = a + b;
            }
            alt(&shifted) / j
        })
        .collect();
    (j, values)
}

impl<'g> FusionContext<'g> {
    pub fn new(group: &'g Group, level: u32) -> Result<Self> {
        Self::with_options(group, level, FusionOptions::default())
    }

    pub fn with_options(group: &'g Group, level: u32, options: FusionOptions) -> Result<Self> {
        let datum = &group.datum;
        let weights = level_k_weights(datum, level);
        let index: HashMap<Weight, usize> =
            weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let points: Vec<TorusPoint> =
            weights.iter().map(|lam| t_lambda(datum, lam, level)).collect::<Result<_>>()?;

        let columns: Vec<(Complex64, Vec<Complex64>)> = if options.threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(options.threads)
                .build()
                .map_err(|e| Error::CapExceeded(format!("thread pool: {e}")))?;
            pool.install(|| points.par_iter().map(|t| column(group, &weights, t)).collect())
        } else {
            points.iter().map(|t| column(group, &weights, t)).collect()
        };

        let n = weights.len();
        let mut denominators = Vec::with_capacity(n);
        let mut table = vec![Vec::with_capacity(n); n];
        for (j, values) in columns {
            if j.norm() <= crate::characters::REGULARITY_THRESHOLD {
                return Err(Error::NonRegularPoint { abs_denominator: j.norm() });
            }
            denominators.push(j);
            for (row, v) in table.iter_mut().zip(values) {
                row.push(v);
            }
        }

        let w0 = group.weyl.longest();
        let dual = weights
            .iter()
            .map(|mu| index[&(-&w0.apply(mu))])
            .collect();
        let torus_order = torus_order(datum, level as u64 + datum.dual_coxeter as u64);
        Ok(FusionContext {
            group,
            level,
            weights,
            index,
            points,
            denominators,
            table,
            dual,
            torus_order,
            tolerance: options.tolerance,
        })
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn datum(&self) -> &'g RootDatum {
        &self.group.datum
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// `Λ*_k` in lexicographic order; all indices refer to this order.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn index_of(&self, mu: &Weight) -> Result<usize> {
        self.index
            .get(mu)
            .copied()
            .ok_or_else(|| Error::NotLevelWeight { weight: mu.clone(), level: self.level })
    }

    pub fn point(&self, lambda: usize) -> &TorusPoint {
        &self.points[lambda]
    }

    /// `J(t_λ)`.
    pub fn denominator(&self, lambda: usize) -> Complex64 {
        self.denominators[lambda]
    }

    /// `τ_μ(t_λ)`.
    pub fn character(&self, mu: usize, lambda: usize) -> Complex64 {
        self.table[mu][lambda]
    }

    /// `|T_{k+h∨}|`.
    pub fn torus_order(&self) -> u64 {
        self.torus_order
    }

    /// Index of `μ* = −w₀μ`.
    pub fn dual_index(&self, mu: usize) -> usize {
        self.dual[mu]
    }

    pub fn basis(&self, mu: &Weight) -> Result<FusionElement> {
        self.index_of(mu)?;
        let mut x = FusionElement::zero(self.level);
        x.add_term(mu.clone(), 1);
        Ok(x)
    }

    /// Perturbs one cached character value. Only for exercising failure
    /// paths.
    #[doc(hidden)]
    pub fn corrupt_cache(&mut self) {
        let last = self.table.len() - 1;
        self.table[last][0] += Complex64::new(0.37, 0.0);
    }

    /// `ev_{t_λ}(x)`.
    pub fn evaluate(&self, x: &FusionElement, lambda: usize) -> Result<Complex64> {
        let mut acc = Complex64::zero();
        for (mu, &c) in x.terms() {
            acc += self.table[self.index_of(mu)?][lambda] * c as f64;
        }
        Ok(acc)
    }

    /// The value vector `(x(t_λ))_λ`.
    pub fn values(&self, x: &FusionElement) -> Result<Vec<Complex64>> {
        (0..self.len()).map(|l| self.evaluate(x, l)).collect()
    }

    /// The involution `τ_μ ↦ τ_{μ*}`.
    pub fn star(&self, x: &FusionElement) -> Result<FusionElement> {
        let mut out = FusionElement::zero(self.level);
        for (mu, &c) in x.terms() {
            let i = self.index_of(mu)?;
            out.add_term(self.weights[self.dual[i]].clone(), c);
        }
        Ok(out)
    }

    /// Fourier coefficient `N(μ)` of a value vector, rounded to the nearest
    /// integer after checking the imaginary part and rounding residual.
    pub fn multiplicity(&self, values: &[Complex64], mu: &Weight) -> Result<i64> {
        let i = self.index_of(mu)?;
        self.multiplicity_at(values, i)
    }

    fn multiplicity_at(&self, values: &[Complex64], mu: usize) -> Result<i64> {
        if values.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: values.len() });
        }
        let mut acc = Complex64::zero();
        for (l, v) in values.iter().enumerate() {
            acc += v * self.table[mu][l].conj() * self.denominators[l].norm_sqr();
        }
        let raw = acc / self.torus_order as f64;
        let rounded = raw.re.round();
        let residual = (raw.re - rounded).abs().max(raw.im.abs());
        if residual >= self.tolerance {
            return Err(Error::Inconsistent {
                context: format!("coefficient of τ({}) at level {}", self.weights[mu], self.level),
                residual,
                tolerance: self.tolerance,
            });
        }
        Ok(rounded as i64)
    }

    /// Largest distance of any Fourier coefficient of `values` from the
    /// nearest integer, imaginary parts included.
    pub fn fourier_residual(&self, values: &[Complex64]) -> Result<f64> {
        if values.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: values.len() });
        }
        let mut worst: f64 = 0.0;
        for mu in 0..self.len() {
            let mut acc = Complex64::zero();
            for (l, v) in values.iter().enumerate() {
                acc += v * self.table[mu][l].conj() * self.denominators[l].norm_sqr();
            }
            let raw = acc / self.torus_order as f64;
            worst = worst.max((raw.re - raw.re.round()).abs()).max(raw.im.abs());
        }
        Ok(worst)
    }

    /// Pointwise product of the value vectors of `τ_μ` and `τ_ν`, by index.
    pub fn product_values(&self, mu: usize, nu: usize) -> Vec<Complex64> {
        (0..self.len()).map(|l| self.table[mu][l] * self.table[nu][l]).collect()
    }

    /// Recovers an element of `R_k(G)` from its value vector.
    pub fn decompose(&self, values: &[Complex64]) -> Result<FusionElement> {
        let mut out = FusionElement::zero(self.level);
        for mu in 0..self.len() {
            out.add_term(self.weights[mu].clone(), self.multiplicity_at(values, mu)?);
        }
        Ok(out)
    }

    /// `τ_μ τ_ν` from the pointwise product of value vectors.
    pub fn fusion_coefficients(&self, mu: &Weight, nu: &Weight) -> Result<FusionElement> {
        let (i, j) = (self.index_of(mu)?, self.index_of(nu)?);
        self.decompose(&self.product_values(i, j))
    }

    /// `τ_μ τ_ν = π(χ_μ χ_ν)` with the tensor product decomposed in `R(G)`.
    pub fn fusion_coefficients_kac_walton(
        &self,
        mu: &Weight,
        nu: &Weight,
        caps: &Caps,
    ) -> Result<FusionElement> {
        self.index_of(mu)?;
        self.index_of(nu)?;
        let product = tensor_decompose(self.datum(), mu, nu, caps)?;
        Ok(project_to_fusion(self.datum(), &product, self.level))
    }

    fn table_from(&self, mut product: impl FnMut(usize, usize) -> Result<FusionElement>) -> Result<FusionTable> {
        let n = self.len();
        let mut coefficients = vec![0u64; n * n * n];
        for a in 0..n {
            for b in 0..n {
                let p = product(a, b)?;
                for (kappa, &c) in p.terms() {
                    if c < 0 {
                        return Err(Error::Inconsistent {
                            context: format!("negative fusion coefficient for τ({})τ({})", self.weights[a], self.weights[b]),
                            residual: c as f64,
                            tolerance: 0.0,
                        });
                    }
                    let lam = self.dual[self.index[kappa]];
                    coefficients[(a * n + b) * n + lam] = c as u64;
                }
            }
        }
        Ok(FusionTable { level: self.level, weights: self.weights.clone(), dual: self.dual.clone(), coefficients })
    }

    /// All structure constants from value vectors.
    pub fn fusion_table(&self) -> Result<FusionTable> {
        self.table_from(|a, b| self.decompose(&self.product_values(a, b)))
    }

    /// All structure constants from tensor products and the affine projection.
    pub fn fusion_table_kac_walton(&self, caps: &Caps) -> Result<FusionTable> {
        self.table_from(|a, b| self.fusion_coefficients_kac_walton(&self.weights[a], &self.weights[b], caps))
    }

    /// Largest deviation in either family of orthogonality relations.
    pub fn verify_orthogonality(&self) -> f64 {
        let n = self.len();
        let t = self.torus_order as f64;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let mut by_point = Complex64::zero();
                let mut by_weight = Complex64::zero();
                for l in 0..n {
                    by_point += self.denominators[l].norm_sqr() * self.table[a][l] * self.table[b][l].conj();
                    // Here a, b index points and l indexes weights.
                    by_weight += self.denominators[a].norm_sqr() * self.table[l][a] * self.table[l][b].conj();
                }
                let target = if a == b { t } else { 0.0 };
                worst = worst.max((by_point - target).norm()).max((by_weight - target).norm());
            }
        }
        worst
    }
}

/// Structure constants `N_{μ,ν,λ}` of `R_k(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionTable {
    pub level: u32,
    pub weights: Vec<Weight>,
    dual: Vec<usize>,
    coefficients: Vec<u64>,
}

#[derive(Serialize)]
struct FusionRow {
    mu: String,
    nu: String,
    lambda: String,
    #[serde(rename = "N")]
    n: u64,
}

impl FusionTable {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `N_{μ,ν,λ}` by index.
    pub fn get(&self, mu: usize, nu: usize, lambda: usize) -> u64 {
        let n = self.len();
        self.coefficients[(mu * n + nu) * n + lambda]
    }

    pub fn dual_index(&self, mu: usize) -> usize {
        self.dual[mu]
    }

    /// Coefficient of `τ_κ` in `τ_μ τ_ν`.
    pub fn product_coefficient(&self, mu: usize, nu: usize, kappa: usize) -> u64 {
        self.get(mu, nu, self.dual[kappa])
    }

    /// Invariance of `N_{μ,ν,λ}` under all permutations of its indices.
    pub fn is_fully_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let v = self.get(a, b, c);
                    v == self.get(b, a, c)
                        && v == self.get(a, c, b)
                        && v == self.get(c, b, a)
                        && v == self.get(b, c, a)
                        && v == self.get(c, a, b)
                })
            })
        })
    }

    /// `N_{0,ν,λ} = δ_{ν,λ*}`; index 0 is the zero weight.
    pub fn satisfies_unit_law(&self) -> bool {
        let n = self.len();
        (0..n).all(|b| (0..n).all(|c| self.get(0, b, c) == (self.dual[b] == c) as u64))
    }

    /// Product in `R_k(G)` using these structure constants.
    pub fn multiply(&self, x: &FusionElement, y: &FusionElement) -> FusionElement {
        let pos: HashMap<&Weight, usize> = self.weights.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let n = self.len();
        let mut acc = vec![0i64; n];
        for (a, &ca) in x.terms() {
            for (b, &cb) in y.terms() {
                let (ia, ib) = (pos[a], pos[b]);
                for (k, slot) in acc.iter_mut().enumerate() {
                    *slot += ca * cb * self.product_coefficient(ia, ib, k) as i64;
                }
            }
        }
        let mut out = FusionElement::zero(self.level);
        for (k, c) in acc.into_iter().enumerate() {
            out.add_term(self.weights[k].clone(), c);
        }
        out
    }

    /// CSV with header `mu,nu,lambda,N`, weights written as dash-joined labels.
    pub fn to_csv(&self) -> String {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(["mu", "nu", "lambda", "N"]).expect("in-memory write");
        for row in self.rows() {
            wtr.write_record([&row.mu, &row.nu, &row.lambda, &row.n.to_string()]).expect("in-memory write");
        }
        String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }

    fn rows(&self) -> Vec<FusionRow> {
        let n = self.len();
        let dash = |w: &Weight| w.labels().iter().map(|x| x.to_string()).collect::<Vec<_>>().join("-");
        let mut rows = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    rows.push(FusionRow {
                        mu: dash(&self.weights[a]),
                        nu: dash(&self.weights[b]),
                        lambda: dash(&self.weights[c]),
                        n: self.get(a, b, c),
                    });
                }
            }
        }
        rows
    }

    pub fn to_json(&self, group: &str, routes_agree: bool) -> serde_json::Value {
        serde_json::json!({
            "group": group,
            "level": self.level,
            "routes_agree": routes_agree,
            "weights": self.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "coefficients": self.rows(),
        })
    }
}

/// `max |χ_{(k+j)ϖ₁}(t_λ)|` over `j = 1..n−1` and `λ ∈ Λ*_k` for `SU(n)`.
pub fn fusion_ideal_check_a(group: &Group, k: u32) -> Result<f64> {
    let datum = &group.datum;
    if datum.cartan_type.family != Family::A {
        return Err(Error::UnsupportedGroup(format!(
            "fusion ideal generators are only known for type A, not {}",
            datum.cartan_type
        )));
    }
    let r = datum.rank;
    let mut worst: f64 = 0.0;
    for lam in level_k_weights(datum, k) {
        let t = t_lambda(datum, &lam, k)?;
        for j in 1..=r as i64 {
            let generator = Weight::fundamental(r, 0).scale(k as i64 + j);
            worst = worst.max(character_value(datum, &group.weyl, &generator, &t)?.norm());
        }
    }
    Ok(worst)
}
