use serde::{Deserialize, Serialize};
use std::fmt;

/// Families of differential indeterminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IndetClass {
    APlus,
    AMinus,
    AZero,
    B,
    R,
    T,
    Y,
    Aux,
    Coef,
    /// Coordinates of the reduced element after the first gauge step.
    HPlus,
    HMinus,
    HZero,
}

impl IndetClass {
    pub const ALL: [IndetClass; 12] = [
        IndetClass::APlus,
        IndetClass::AMinus,
        IndetClass::AZero,
        IndetClass::B,
        IndetClass::R,
        IndetClass::T,
        IndetClass::Y,
        IndetClass::Aux,
        IndetClass::Coef,
        IndetClass::HPlus,
        IndetClass::HMinus,
        IndetClass::HZero,
    ];

    pub fn prefix(self) -> &'static str {
        match self {
            IndetClass::APlus => "ap",
            IndetClass::AMinus => "am",
            IndetClass::AZero => "a0",
            IndetClass::B => "b",
            IndetClass::R => "r",
            IndetClass::T => "t",
            IndetClass::Y => "y",
            IndetClass::Aux => "x",
            IndetClass::Coef => "c",
            IndetClass::HPlus => "hp",
            IndetClass::HMinus => "hm",
            IndetClass::HZero => "h0",
        }
    }

    pub fn from_prefix(s: &str) -> Option<IndetClass> {
        IndetClass::ALL.into_iter().find(|c| c.prefix() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiffIndet {
    pub class: IndetClass,
    pub index: u32,
}

impl DiffIndet {
    pub const fn new(class: IndetClass, index: u32) -> Self {
        DiffIndet { class, index }
    }

    pub fn order(self, k: u32) -> Derivative {
        Derivative { indet: self, order: k }
    }

    pub fn base(self) -> Derivative {
        self.order(0)
    }
}

impl fmt::Display for DiffIndet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.class.prefix(), self.index)
    }
}

pub const fn ap(i: u32) -> DiffIndet {
    DiffIndet::new(IndetClass::APlus, i)
}
pub const fn am(i: u32) -> DiffIndet {
    DiffIndet::new(IndetClass::AMinus, i)
}
pub const fn a0(i: u32) -> DiffIndet {
    DiffIndet::new(IndetClass::AZero, i)
}
pub const fn b(i: u32) -> DiffIndet {
    DiffIndet::new(IndetClass::B, i)
}
pub const fn r(i: u32) -> DiffIndet {
    DiffIndet::new(IndetClass::R, i)
}
pub const fn t(i: u32) -> DiffIndet {
    DiffIndet::new(IndetClass::T, i)
}
pub const fn y(i: u32) -> DiffIndet {
    DiffIndet::new(IndetClass::Y, i)
}
pub const fn aux(i: u32) -> DiffIndet {
    DiffIndet::new(IndetClass::Aux, i)
}
pub const fn coef(i: u32) -> DiffIndet {
    DiffIndet::new(IndetClass::Coef, i)
}
pub const fn hp(i: u32) -> DiffIndet {
    DiffIndet::new(IndetClass::HPlus, i)
}
pub const fn hm(i: u32) -> DiffIndet {
    DiffIndet::new(IndetClass::HMinus, i)
}
pub const fn h0(i: u32) -> DiffIndet {
    DiffIndet::new(IndetClass::HZero, i)
}

/// A derivative ∂^order of an indeterminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Derivative {
    pub indet: DiffIndet,
    pub order: u32,
}

impl Derivative {
    pub fn derive(self) -> Derivative {
        Derivative { indet: self.indet, order: self.order + 1 }
    }

    /// True when self is ∂^k(other) for some k ≥ 0.
    pub fn is_derivative_of(self, other: Derivative) -> bool {
        self.indet == other.indet && self.order >= other.order
    }
}

impl fmt::Display for Derivative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 0 {
            write!(f, "{}", self.indet)
        } else {
            write!(f, "{}^({})", self.indet, self.order)
        }
    }
}
