use super::grammar::parse_indet;
use super::indet::Derivative;
use super::poly::{DiffPoly, Monomial};
use crate::error::{Error, Result};
use crate::rational::parse_q;
use serde::{Deserialize, Serialize};

/// Expression tree mirroring the sum / term / power / derivative structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum ExprNode {
    Sum { terms: Vec<ExprNode> },
    Term { coeff: String, factors: Vec<ExprNode> },
    Power { base: Box<ExprNode>, exponent: u32 },
    Derivative { indet: String, order: u32 },
}

pub fn to_tree(p: &DiffPoly) -> ExprNode {
    let terms = p
        .terms()
        .rev()
        .map(|(m, c)| ExprNode::Term {
            coeff: c.to_string(),
            factors: m
                .factors()
                .iter()
                .map(|&(d, e)| {
                    let leaf = ExprNode::Derivative { indet: d.indet.to_string(), order: d.order };
                    if e == 1 {
                        leaf
                    } else {
                        ExprNode::Power { base: Box::new(leaf), exponent: e }
                    }
                })
                .collect(),
        })
        .collect();
    ExprNode::Sum { terms }
}

fn factor(node: &ExprNode) -> Result<(Derivative, u32)> {
    match node {
        ExprNode::Derivative { indet, order } => {
            let u = parse_indet(indet).ok_or_else(|| Error::Invalid(format!("unknown indeterminate {indet}")))?;
            Ok((u.order(*order), 1))
        }
        ExprNode::Power { base, exponent } => {
            let (d, e) = factor(base)?;
            Ok((d, e * exponent))
        }
        _ => Err(Error::Invalid("expected derivative or power node".into())),
    }
}

pub fn from_tree(node: &ExprNode) -> Result<DiffPoly> {
    match node {
        ExprNode::Sum { terms } => {
            let mut p = DiffPoly::zero();
            for t in terms {
                p += from_tree(t)?;
            }
            Ok(p)
        }
        ExprNode::Term { coeff, factors } => {
            let c = parse_q(coeff).ok_or_else(|| Error::Invalid(format!("bad coefficient {coeff}")))?;
            let fs = factors.iter().map(factor).collect::<Result<Vec<_>>>()?;
            Ok(DiffPoly::monomial(Monomial::from_factors(fs), c))
        }
        other => {
            let (d, e) = factor(other)?;
            Ok(DiffPoly::monomial(Monomial::power(d, e), crate::rational::qi(1)))
        }
    }
}
