//! Level-k fusion rings (Verlinde algebras) of compact simply connected
//! simple Lie groups, computed in exact arithmetic, together with the
//! fixed-point quantizations of conjugacy classes, the double, moduli spaces
//! of flat connections and the sphere `S^{2n}`.

pub mod characters;
pub mod cli;
pub mod error;
pub mod fusion;
pub mod lie;
pub mod quantize;
pub mod weyl;

pub use error::{Error, Result};
pub use lie::{CartanType, RootDatum, Weight};
pub use weyl::WeylGroup;

/// A root datum together with its enumerated Weyl group.
#[derive(Debug, Clone)]
pub struct Group {
    pub datum: RootDatum,
    pub weyl: WeylGroup,
}

impl Group {
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        let datum = lie::build_root_datum(cartan_type.family, cartan_type.rank)?;
        let weyl = weyl::enumerate_weyl(&datum)?;
        Ok(Group { datum, weyl })
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Group::new(label.parse()?)
    }

    /// `SU(n)`, i.e. type `A_{n−1}`.
    pub fn special_unitary(n: usize) -> Result<Self> {
        Group::new(CartanType::new(lie::Family::A, n.saturating_sub(1))?)
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }
}
