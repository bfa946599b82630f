use super::indet::{Derivative, DiffIndet, IndetClass};
use crate::rootsys::RootSystem;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// A block of indeterminate classes compared among themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    /// Classes in increasing rank order.
    pub classes: Vec<IndetClass>,
    /// Orderly blocks compare derivative order first.
    pub orderly: bool,
    /// Optional per-indeterminate weight, compared after the order.
    pub weights: BTreeMap<DiffIndet, i64>,
}

impl Block {
    pub fn orderly(classes: Vec<IndetClass>) -> Self {
        Block { classes, orderly: true, weights: BTreeMap::new() }
    }

    pub fn lex(classes: Vec<IndetClass>) -> Self {
        Block { classes, orderly: false, weights: BTreeMap::new() }
    }
}

/// Block elimination ranking. `blocks[0]` dominates every later block.
/// Classes not mentioned form an implicit lowest orderly block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranking {
    pub blocks: Vec<Block>,
}

impl Ranking {
    pub fn new(blocks: Vec<Block>) -> Self {
        Ranking { blocks }
    }

    /// One orderly block over every class.
    pub fn orderly() -> Self {
        Ranking { blocks: vec![Block::orderly(IndetClass::ALL.to_vec())] }
    }

    /// Elimination ranking adapted to a root system: b ≫ (a⁺, a⁰, a⁻), b orderly and
    /// weighted by the height of the attached negative root.
    pub fn adapted(rs: &RootSystem) -> Self {
        let mut weights = BTreeMap::new();
        for i in 0..rs.positive_count() {
            weights.insert(crate::diffpoly::indet::b(i as u32 + 1), rs.height(i));
        }
        let bblock = Block { classes: vec![IndetClass::B], orderly: true, weights };
        let ablock = Block::orderly(vec![IndetClass::APlus, IndetClass::AZero, IndetClass::AMinus]);
        Ranking { blocks: vec![bblock, ablock] }
    }

    fn locate(&self, c: IndetClass) -> (usize, usize) {
        for (bi, b) in self.blocks.iter().enumerate() {
            if let Some(p) = b.classes.iter().position(|&x| x == c) {
                return (bi, p);
            }
        }
        let p = IndetClass::ALL.iter().position(|&x| x == c).unwrap_or(0);
        (self.blocks.len(), p)
    }

    pub fn compare(&self, u: Derivative, v: Derivative) -> Ordering {
        let (bu, pu) = self.locate(u.indet.class);
        let (bv, pv) = self.locate(v.indet.class);
        if bu != bv {
            return bv.cmp(&bu);
        }
        let (orderly, weights) = match self.blocks.get(bu) {
            Some(b) => (b.orderly, Some(&b.weights)),
            None => (true, None),
        };
        let w = |x: DiffIndet| weights.and_then(|m| m.get(&x)).copied().unwrap_or(0);
        let ku = (w(u.indet), u.indet.index, pu);
        let kv = (w(v.indet), v.indet.index, pv);
        if orderly {
            (u.order, ku).cmp(&(v.order, kv))
        } else {
            (ku, u.order).cmp(&(kv, v.order))
        }
    }

    pub fn greater(&self, u: Derivative, v: Derivative) -> bool {
        self.compare(u, v) == Ordering::Greater
    }

    pub fn max<I: IntoIterator<Item = Derivative>>(&self, it: I) -> Option<Derivative> {
        it.into_iter().max_by(|a, b| self.compare(*a, *b))
    }

    /// Sorts derivatives from highest to lowest rank.
    pub fn sort_desc(&self, v: &mut [Derivative]) {
        v.sort_by(|a, b| self.compare(*b, *a));
    }
}
