//! Weyl group enumeration and the (shifted, affine) Weyl actions on weights.

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{prequantized_conjugacy_class, Coweight, RootDatum, Weight, Q, WEYL_ORDER_CAP};

/// An element of `W` with a reduced word and its matrix on Dynkin labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<u8>,
    pub length: usize,
    rank: usize,
    // Row-major; entries are bounded by the largest coroot coefficient of a
    // fundamental weight, so they always fit.
    matrix: Vec<i8>,
}

impl WeylElement {
    fn identity(rank: usize) -> Self {
        let mut matrix = vec![0i8; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElement { word: Vec::new(), length: 0, rank, matrix }
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i * self.rank + j] as i64
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// `(−1)^{l(w)}`.
    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        let mut out = vec![0; self.rank];
        self.apply_into(w.labels(), &mut out);
        Weight(out)
    }

    pub fn apply_into(&self, labels: &[i64], out: &mut [i64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.matrix[i * self.rank..(i + 1) * self.rank];
            *o = row.iter().zip(labels).map(|(&m, &x)| m as i64 * x).sum();
        }
    }

    pub fn apply_rational(&self, labels: &[Q]) -> Vec<Q> {
        (0..self.rank)
            .map(|i| (0..self.rank).fold(Q::zero(), |acc, j| acc + labels[j] * self.entry(i, j)))
            .collect()
    }
}

/// The full Weyl group, identity first, in breadth-first (length) order.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub rank: usize,
    pub elements: Vec<WeylElement>,
    longest: usize,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn longest(&self) -> &WeylElement {
        &self.elements[self.longest]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, WeylElement> {
        self.elements.iter()
    }
}

fn simple_reflection_matrix(datum: &RootDatum, i: usize) -> Vec<i64> {
    // s_i(λ) = λ − λ_i α_i, and (α_i)_j = cartan[j][i].
    let r = datum.rank;
    let mut m = vec![0i64; r * r];
    for j in 0..r {
        m[j * r + j] = 1;
        m[j * r + i] -= datum.cartan[j][i];
    }
    m
}

/// Enumerates `W` by breadth-first search over left multiplication by
/// simple reflections, deduplicating on matrices.
pub fn enumerate_weyl(datum: &RootDatum) -> Result<WeylGroup> {
    let order = datum.cartan_type.weyl_order();
    if order > WEYL_ORDER_CAP {
        return Err(Error::WeylGroupTooLarge {
            group: datum.cartan_type.to_string(),
            order,
            cap: WEYL_ORDER_CAP,
        });
    }
    let r = datum.rank;
    let gens: Vec<Vec<i64>> = (0..r).map(|i| simple_reflection_matrix(datum, i)).collect();
    let identity = WeylElement::identity(r);
    let mut index: HashMap<Vec<i8>, usize> = HashMap::with_capacity(order as usize);
    index.insert(identity.matrix.clone(), 0);
    let mut elements = vec![identity];
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for (i, s) in gens.iter().enumerate() {
            let g = &elements[idx];
            let mut product = vec![0i8; r * r];
            for a in 0..r {
                for b in 0..r {
                    let v: i64 = (0..r).map(|c| s[a * r + c] * g.entry(c, b)).sum();
                    product[a * r + b] = i8::try_from(v).expect("Weyl matrix entry out of range");
                }
            }
            if index.contains_key(&product) {
                continue;
            }
            let mut word = Vec::with_capacity(g.word.len() + 1);
            word.push(i as u8);
            word.extend_from_slice(&g.word);
            let element = WeylElement { length: g.length + 1, word, rank: r, matrix: product };
            index.insert(element.matrix.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(element);
        }
    }
    debug_assert_eq!(elements.len() as u64, order);
    let longest = elements.len() - 1;
    Ok(WeylGroup { rank: r, elements, longest })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantReduction {
    pub weight: Weight,
    pub sign: i64,
    /// Some reflection fixes the input. The sign is meaningless in that case.
    pub singular: bool,
}

/// Moves `ν` into the dominant chamber by simple reflections, always at the
/// smallest index carrying a negative label.
pub fn dominant_reduce(datum: &RootDatum, nu: &Weight) -> DominantReduction {
    let mut labels = nu.0.clone();
    let mut sign = 1;
    while let Some(i) = labels.iter().position(|&x| x < 0) {
        let c = labels[i];
        for (j, l) in labels.iter_mut().enumerate() {
            *l -= c * datum.cartan[j][i];
        }
        sign = -sign;
    }
    let singular = labels.contains(&0);
    DominantReduction { weight: Weight(labels), sign, singular }
}

/// Result of reducing `μ+ρ` into the open alcove at level `k+h∨`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineReduction {
    /// `w•_k μ = weight ∈ Λ*_k` with `sign = (−1)^{l(w)}`.
    Alcove { weight: Weight, sign: i64 },
    /// `μ` is fixed by a non-trivial element of the shifted affine action.
    Wall,
}

/// Reduces `μ` under the shifted affine Weyl action at level `k`.
///
/// Alternates finite dominant reduction of `ν = μ+ρ` with the reflection
/// across the hyperplane `⟨ν, θ∨⟩ = k+h∨`.
pub fn affine_reduce(datum: &RootDatum, mu: &Weight, k: u32) -> AffineReduction {
    let shift = k as i64 + datum.dual_coxeter;
    let mut nu = mu + &datum.rho;
    let mut sign = 1;
    let cap = datum.cartan_type.weyl_order().min(WEYL_ORDER_CAP) as i64
        * shift
        * datum.rank as i64
        + 16
        + nu.labels().iter().map(|x| x.abs()).sum::<i64>();
    for _ in 0..cap {
        let red = dominant_reduce(datum, &nu);
        if red.singular {
            return AffineReduction::Wall;
        }
        sign *= red.sign;
        nu = red.weight;
        let level = datum.level_of(&nu);
        if level == shift {
            return AffineReduction::Wall;
        }
        if level < shift {
            return AffineReduction::Alcove { weight: &nu - &datum.rho, sign };
        }
        nu = &nu - &datum.theta.scale(level - shift);
        sign = -sign;
    }
    panic!("affine reduction of {mu} at level {k} did not terminate");
}

/// Face data of the alcove point attached to a level-`k` weight.
#[derive(Debug, Clone)]
pub struct FaceData {
    pub xi: Coweight,
    /// `R_{σ,+}`: positive roots vanishing on `ξ`, and negatives of positive
    /// roots equal to 1 on `ξ`.
    pub face_roots_positive: Vec<Weight>,
    /// `W_σ = { w ∈ W : wξ − ξ ∈ Λ }`.
    pub stabilizer: Vec<WeylElement>,
    /// Half the sum of `R_{σ,+}`, as rational labels.
    pub rho_sigma: Vec<Q>,
}

pub fn face_data(datum: &RootDatum, weyl: &WeylGroup, mu: &Weight, k: u32) -> Result<FaceData> {
    let xi = prequantized_conjugacy_class(datum, mu, k)?;
    let mut face_roots_positive = Vec::new();
    for alpha in &datum.positive_roots {
        let v = xi.pair(alpha);
        if v.is_zero() {
            face_roots_positive.push(alpha.clone());
        } else if v.is_one() {
            face_roots_positive.push(-alpha);
        }
    }
    let r = datum.rank;
    let mut rho_sigma = vec![Q::zero(); r];
    for root in &face_roots_positive {
        for (acc, &x) in rho_sigma.iter_mut().zip(root.labels()) {
            *acc += Q::new(x, 2);
        }
    }
    // ⟨ϖ_i, wξ − ξ⟩ = ⟨w⁻¹ϖ_i − ϖ_i, ξ⟩; the stabilizer is closed under
    // inverses so testing uϖ_i − ϖ_i over all u yields the same set.
    let fundamentals: Vec<Weight> = (0..r).map(|i| Weight::fundamental(r, i)).collect();
    let stabilizer = weyl
        .iter()
        .filter(|w| {
            fundamentals.iter().all(|f| {
                let moved = &w.apply(f) - f;
                xi.pair(&moved).is_integer()
            })
        })
        .cloned()
        .collect();
    Ok(FaceData { xi, face_roots_positive, stabilizer, rho_sigma })
}
