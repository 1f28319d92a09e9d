//! Quantizations of q-Hamiltonian spaces computed from fixed-point data at
//! the special points `t_λ`: conjugacy classes, the double, moduli spaces of
//! flat connections and the sphere `S^{2n}`.
//!
//! Each result is first assembled as a value vector `λ ↦ Q(M)(t_λ)` and then
//! converted to an element of `R_k(G)` by the finite Fourier transform of
//! [`FusionContext::decompose`].

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::characters::{character_value, TorusPoint};
use crate::error::{Error, Result};
use crate::fusion::{FusionContext, FusionElement, FusionTable};
use crate::lie::{Family, RootDatum, Weight, Q};
use crate::weyl::{face_data, WeylElement};
use crate::Group;

/// An isolated fixed point of `t`, contributing
/// `sign · t^{shift} / Π_j (1 − t^{−β_j})`.
///
/// The square-root prefactor is never inferred: callers pass the resolved
/// shift and sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedFixedPoint {
    pub normal_weights: Vec<Weight>,
    pub shift_weight: Vec<Q>,
    pub sign: i64,
    pub orientation_note: String,
}

impl IsolatedFixedPoint {
    /// The fixed point moved by `w`: weights and shift transformed by `w`.
    pub fn translated(&self, w: &WeylElement) -> Self {
        IsolatedFixedPoint {
            normal_weights: self.normal_weights.iter().map(|b| w.apply(b)).collect(),
            shift_weight: w.apply_rational(&self.shift_weight),
            sign: self.sign,
            orientation_note: self.orientation_note.clone(),
        }
    }
}

pub fn fixed_point_contribution(fp: &IsolatedFixedPoint, t: &TorusPoint) -> Result<Complex64> {
    let mut denominator = Complex64::one();
    for beta in &fp.normal_weights {
        if t.phase(beta).is_zero() {
            return Err(Error::DegenerateWeight { weight: beta.clone() });
        }
        denominator *= Complex64::one() - t.value(&-beta);
    }
    Ok(t.value_rational(&fp.shift_weight) * fp.sign as f64 / denominator)
}

/// The value vector `λ ↦ Q(C)(t_λ)` of the conjugacy class attached to `μ`,
/// summed over the fixed points `W/W_σ` as `|W_σ|⁻¹ Σ_w χ(ν_F, w⁻¹ t_λ)`.
pub fn conjugacy_class_values(ctx: &FusionContext<'_>, mu: &Weight) -> Result<Vec<Complex64>> {
    let group = ctx.group();
    let datum = &group.datum;
    let face = face_data(datum, &group.weyl, mu, ctx.level())?;
    let r = datum.rank;

    // t^{μ+ρ−ρ_σ} J_σ(t) = Σ_{v ∈ W_σ} (−1)^{l(v)} t^{μ+ρ−ρ_σ+vρ_σ}; each
    // exponent differs from μ+ρ by a sum of roots, hence is integral.
    let base: Vec<Q> = (0..r)
        .map(|i| Q::from_integer(mu.0[i] + datum.rho.0[i]) - face.rho_sigma[i])
        .collect();
    let exponents: Vec<(i64, Weight)> = face
        .stabilizer
        .iter()
        .map(|v| {
            let moved = v.apply_rational(&face.rho_sigma);
            let labels = base
                .iter()
                .zip(&moved)
                .map(|(a, b)| {
                    let e = a + b;
                    assert!(e.is_integer(), "non-integral fixed-point exponent");
                    e.to_integer()
                })
                .collect();
            (v.sign(), Weight(labels))
        })
        .collect();

    let stabilizer_order = face.stabilizer.len() as f64;
    (0..ctx.len())
        .map(|lambda| {
            let t = ctx.point(lambda);
            let j = ctx.denominator(lambda);
            let mut total = Complex64::zero();
            for w in group.weyl.iter() {
                let moved = t.act_inverse(w);
                let mut numerator = Complex64::zero();
                for (sign, e) in &exponents {
                    numerator += moved.value(e) * *sign as f64;
                }
                // J(w⁻¹t) = (−1)^{l(w)} J(t).
                total += numerator / (j * w.sign() as f64);
            }
            Ok(total / stabilizer_order)
        })
        .collect()
}

/// `Q(C) ∈ R_k(G)` for the conjugacy class pre-quantized by `μ`; checked to
/// equal `τ_μ`.
pub fn quantize_conjugacy_class(ctx: &FusionContext<'_>, mu: &Weight) -> Result<FusionElement> {
    let values = conjugacy_class_values(ctx, mu)?;
    let expected = ctx.basis(mu)?;
    let report = |detail: String| {
        let i = ctx.index_of(mu).expect("validated above");
        let (worst, dev) = (0..ctx.len())
            .map(|l| (l, (values[l] - ctx.character(i, l)).norm()))
            .fold((0, 0.0f64), |acc, x| if x.1 > acc.1 { x } else { acc });
        Error::RouteMismatch(format!(
            "conjugacy class of ({mu}) at level {}: {detail}; largest deviation {dev:e} at λ = ({})",
            ctx.level(),
            ctx.weights()[worst]
        ))
    };
    let element = ctx.decompose(&values).map_err(|e| report(e.to_string()))?;
    if element != expected {
        return Err(report(format!("obtained {element}")));
    }
    Ok(element)
}

/// Quantization of the double `D(G) = G × G` at level `(k, k)` and of the
/// fused double.
#[derive(Debug, Clone)]
pub struct DoubleQuantization {
    /// `|T_{k+h∨}| / |J(t_λ)|²`.
    pub diagonal_closed_form: Vec<f64>,
    /// `Σ_μ |τ_μ(t_λ)|²`.
    pub diagonal_sum: Vec<f64>,
    pub max_discrepancy: f64,
    /// `Σ_μ τ_μ τ_μ*` in the fusion algebra.
    pub fused: FusionElement,
    /// `Σ_{μ,ν} N_{μ,μ*,ν*} τ_ν`.
    pub fused_from_structure_constants: FusionElement,
    /// The fused double recovered from the closed-form diagonal values.
    pub fused_from_localization: FusionElement,
    pub routes_agree: bool,
}

pub fn quantize_double(ctx: &FusionContext<'_>, table: &FusionTable) -> Result<DoubleQuantization> {
    let n = ctx.len();
    let t = ctx.torus_order() as f64;
    let diagonal_closed_form: Vec<f64> = (0..n).map(|l| t / ctx.denominator(l).norm_sqr()).collect();
    let diagonal_sum: Vec<f64> =
        (0..n).map(|l| (0..n).map(|m| ctx.character(m, l).norm_sqr()).sum()).collect();
    let max_discrepancy = diagonal_closed_form
        .iter()
        .zip(&diagonal_sum)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if max_discrepancy > ctx.tolerance() {
        return Err(Error::Inconsistent {
            context: "diagonal of the double".into(),
            residual: max_discrepancy,
            tolerance: ctx.tolerance(),
        });
    }

    let mut fused = FusionElement::zero(ctx.level());
    let mut fused_from_structure_constants = FusionElement::zero(ctx.level());
    for m in 0..n {
        let x = ctx.basis(&ctx.weights()[m])?;
        let y = ctx.basis(&ctx.weights()[ctx.dual_index(m)])?;
        for (w, c) in table.multiply(&x, &y).terms() {
            fused.add_term(w.clone(), *c);
        }
        for v in 0..n {
            let c = table.get(m, ctx.dual_index(m), ctx.dual_index(v));
            fused_from_structure_constants.add_term(ctx.weights()[v].clone(), c as i64);
        }
    }
    let closed: Vec<Complex64> = diagonal_closed_form.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let fused_from_localization = ctx.decompose(&closed)?;
    let routes_agree = fused == fused_from_structure_constants && fused == fused_from_localization;
    Ok(DoubleQuantization {
        diagonal_closed_form,
        diagonal_sum,
        max_discrepancy,
        fused,
        fused_from_structure_constants,
        fused_from_localization,
        routes_agree,
    })
}

/// A surface of genus `h` with boundary circles labelled by level-`k` weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerlindeProblem {
    pub genus: u32,
    pub boundary: Vec<Weight>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerlindeDimension {
    pub fusion_algebra: i64,
    pub closed_form: i64,
    /// Rounding residual of the closed-form sum.
    pub residual: f64,
}

/// Multiplicity of `τ_0` in the quantization of the moduli space of flat
/// connections, by two routes that must agree.
pub fn verlinde_dimension(
    ctx: &FusionContext<'_>,
    table: &FusionTable,
    problem: &VerlindeProblem,
) -> Result<u64> {
    let dims = verlinde_routes(ctx, table, problem)?;
    if dims.fusion_algebra != dims.closed_form || dims.fusion_algebra < 0 {
        return Err(Error::RouteMismatch(format!(
            "Verlinde dimension: fusion algebra gives {}, closed form gives {}",
            dims.fusion_algebra, dims.closed_form
        )));
    }
    Ok(dims.fusion_algebra as u64)
}

pub fn verlinde_routes(
    ctx: &FusionContext<'_>,
    table: &FusionTable,
    problem: &VerlindeProblem,
) -> Result<VerlindeDimension> {
    let indices: Vec<usize> = problem.boundary.iter().map(|mu| ctx.index_of(mu)).collect::<Result<_>>()?;
    let zero = Weight::zero(ctx.datum().rank);

    // Route A: (Σ_μ τ_μ τ_μ*)^h · Π_j τ_{μ_j}.
    let handle = (0..ctx.len()).try_fold(FusionElement::zero(ctx.level()), |mut acc, m| {
        let x = ctx.basis(&ctx.weights()[m])?;
        let y = ctx.basis(&ctx.weights()[ctx.dual_index(m)])?;
        for (w, c) in table.multiply(&x, &y).terms() {
            acc.add_term(w.clone(), *c);
        }
        Ok::<_, Error>(acc)
    })?;
    let mut acc = ctx.basis(&zero)?;
    for _ in 0..problem.genus {
        acc = table.multiply(&acc, &handle);
    }
    for mu in &problem.boundary {
        acc = table.multiply(&acc, &ctx.basis(mu)?);
    }
    let fusion_algebra = acc.coefficient(&zero);

    // Route B: Σ_λ (|T|/|J(t_λ)|²)^{h−1} Π_j τ_{μ_j}(t_λ).
    let t = ctx.torus_order() as f64;
    let mut sum = Complex64::zero();
    for l in 0..ctx.len() {
        let weight = (t / ctx.denominator(l).norm_sqr()).powi(problem.genus as i32 - 1);
        let product = indices.iter().fold(Complex64::one(), |p, &i| p * ctx.character(i, l));
        sum += product * weight;
    }
    let rounded = sum.re.round();
    let residual = (sum.re - rounded).abs().max(sum.im.abs());
    if residual >= ctx.tolerance() {
        return Err(Error::Inconsistent {
            context: format!("Verlinde sum for genus {} with {} boundary labels", problem.genus, indices.len()),
            residual,
            tolerance: ctx.tolerance(),
        });
    }
    Ok(VerlindeDimension { fusion_algebra, closed_form: rounded as i64, residual })
}

/// The two fixed points of `t_λ` on `S^{2n}`: `e` and the central element
/// `c = exp(ϖ₁∨)`.
///
/// Both have tangent weights `−ε_1, …, −ε_n`, so the denominator is
/// `Π_j (1 − z_j)` with `z_j = t^{ε_j}` the diagonal entries of `t`; at `c`
/// the trivializations differ by `t^{(k+n)ϖ₁}` and the orientation flips.
pub fn sphere_fixed_points(n: usize, k: u32) -> [IsolatedFixedPoint; 2] {
    let r = n - 1;
    let epsilon = |j: usize| {
        let mut w = Weight::zero(r);
        if j < r {
            w.0[j] += 1;
        }
        if j > 0 {
            w.0[j - 1] -= 1;
        }
        w
    };
    let weights: Vec<Weight> = (0..n).map(|j| -&epsilon(j)).collect();
    let mut shift = vec![Q::zero(); r];
    shift[0] = Q::from_integer(k as i64 + n as i64);
    [
        IsolatedFixedPoint {
            normal_weights: weights.clone(),
            shift_weight: vec![Q::zero(); r],
            sign: 1,
            orientation_note: "identity, complex orientation of C^n".into(),
        },
        IsolatedFixedPoint {
            normal_weights: weights,
            shift_weight: shift,
            sign: -1,
            orientation_note: "central vertex, orientation opposite to C^n".into(),
        },
    ]
}

#[derive(Debug, Clone)]
pub struct SphereQuantization {
    pub element: FusionElement,
    /// Largest deviation of the raw two-fixed-point sum from the cancelled
    /// polynomial over the non-degenerate points.
    pub raw_max_residual: f64,
    pub raw_points_checked: usize,
    pub degenerate_points: usize,
}

/// `Q(S^{2n})` at level `k` for `SU(n)`, checked to equal `Σ_{i≤k} τ_{iϖ₁}`.
pub fn quantize_sphere(ctx: &FusionContext<'_>) -> Result<SphereQuantization> {
    let group = ctx.group();
    let datum: &RootDatum = &group.datum;
    if datum.cartan_type.family != Family::A {
        return Err(Error::UnsupportedGroup(format!("S^2n is an SU(n)-space; got {}", datum.cartan_type)));
    }
    let n = datum.rank + 1;
    let k = ctx.level();
    let top = k as i64 + n as i64;
    let varpi = Weight::fundamental(datum.rank, 0);
    let fixed_points = sphere_fixed_points(n, k);

    let mut values = Vec::with_capacity(ctx.len());
    let mut raw_max_residual: f64 = 0.0;
    let mut raw_points_checked = 0;
    let mut degenerate_points = 0;
    for l in 0..ctx.len() {
        let t = ctx.point(l);
        let mut v = Complex64::zero();
        for m in 0..top {
            v += character_value(datum, &group.weyl, &varpi.scale(m), t)?;
        }
        let raw: Result<Complex64> = fixed_points
            .iter()
            .map(|fp| fixed_point_contribution(fp, t))
            .sum();
        match raw {
            Ok(raw) => {
                raw_points_checked += 1;
                raw_max_residual = raw_max_residual.max((raw - v).norm());
            }
            Err(Error::DegenerateWeight { .. }) => degenerate_points += 1,
            Err(e) => return Err(e),
        }
        values.push(v);
    }
    if raw_max_residual > ctx.tolerance() {
        return Err(Error::Inconsistent {
            context: "raw fixed-point sum for S^2n".into(),
            residual: raw_max_residual,
            tolerance: ctx.tolerance(),
        });
    }
    let element = ctx.decompose(&values)?;
    let expected = FusionElement::from_terms(datum, k, (0..=k as i64).map(|i| (varpi.scale(i), 1)))?;
    if element != expected {
        return Err(Error::RouteMismatch(format!("S^{} at level {k}: obtained {element}, expected {expected}", 2 * n)));
    }
    Ok(SphereQuantization { element, raw_max_residual, raw_points_checked, degenerate_points })
}

/// Convenience: `S^{2n}` for `SU(n)` at level `k`, building its own context.
pub fn quantize_sphere_su(n: usize, k: u32) -> Result<SphereQuantization> {
    if n < 2 {
        return Err(Error::UnsupportedGroup(format!("SU({n})")));
    }
    let group = Group::special_unitary(n)?;
    let ctx = FusionContext::new(&group, k)?;
    quantize_sphere(&ctx)
}
