//! JSON document describing a solved instance and its code.
//!
//! ```json
//! {"costs":[2,2,5],"denominator":1,"n":10,"optimal_m":6,"optimal_cost":59,
//!  "trace":[{"m":5,"cost":60},...],
//!  "codewords":[{"symbol":0,"letters":[1,1,1],"length":6},...]}
//! ```
//!
//! `costs` are the rescaled integer letter lengths; the original length of
//! a letter is `cost * numerator / denominator`. `numerator` is omitted when
//! it is 1.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codec::{Code, CodecError, Letter};
use crate::engine::{CodeTree, Solution};
use crate::model::{Cost, Instance, ModelError};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("inconsistent document: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracePoint {
    pub m: usize,
    pub cost: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codeword {
    pub symbol: usize,
    pub letters: Vec<Letter>,
    pub length: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNodeDoc {
    pub parent: usize,
    pub child: usize,
    pub depth: Cost,
}

/// Non-terminals in rank order (rank 1 is the root) and terminals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDoc {
    pub non_terminals: Vec<TreeNodeDoc>,
    pub terminals: Vec<TreeNodeDoc>,
}

impl From<&CodeTree> for TreeDoc {
    fn from(tree: &CodeTree) -> Self {
        TreeDoc {
            non_terminals: tree
                .non_terminals
                .iter()
                .map(|nt| TreeNodeDoc {
                    parent: nt.parent,
                    child: nt.child,
                    depth: nt.depth,
                })
                .collect(),
            terminals: tree
                .terminals
                .iter()
                .map(|t| TreeNodeDoc {
                    parent: t.parent,
                    child: t.child,
                    depth: t.depth,
                })
                .collect(),
        }
    }
}

fn one() -> u64 {
    1
}

fn is_one(v: &u64) -> bool {
    *v == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDocument {
    pub costs: Vec<u64>,
    pub denominator: u64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub numerator: u64,
    pub n: usize,
    pub optimal_m: usize,
    pub optimal_cost: Cost,
    pub trace: Vec<TracePoint>,
    pub codewords: Vec<Codeword>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<TreeDoc>,
}

impl CodeDocument {
    pub fn new(instance: &Instance, solution: &Solution, code: &Code) -> CodeDocument {
        CodeDocument {
            costs: instance.costs().to_vec(),
            denominator: instance.scale_denom(),
            numerator: instance.scale_numer(),
            n: instance.n(),
            optimal_m: solution.optimal_m,
            optimal_cost: solution.optimal_cost,
            trace: solution
                .trace
                .iter()
                .map(|e| TracePoint {
                    m: e.m,
                    cost: e.cost,
                })
                .collect(),
            codewords: code
                .words()
                .iter()
                .zip(code.lengths())
                .enumerate()
                .map(|(symbol, (letters, &length))| Codeword {
                    symbol,
                    letters: letters.clone(),
                    length,
                })
                .collect(),
            tree: None,
        }
    }

    pub fn with_tree(mut self, tree: &CodeTree) -> CodeDocument {
        self.tree = Some(TreeDoc::from(tree));
        self
    }

    pub fn instance(&self) -> Result<Instance, DocumentError> {
        Ok(Instance::from_parts(
            self.costs.clone(),
            self.numerator,
            self.denominator,
            self.n,
        )?)
    }

    /// Rebuilds the code, checking that the stored words, lengths and
    /// symbol assignment are exactly what this crate would produce.
    pub fn to_code(&self) -> Result<Code, DocumentError> {
        let instance = self.instance()?;
        let inconsistent = |msg: String| Err(DocumentError::Inconsistent(msg));
        if self.codewords.len() != self.n {
            return inconsistent(format!(
                "{} codewords for n = {}",
                self.codewords.len(),
                self.n
            ));
        }
        let mut words = vec![None; self.n];
        for cw in &self.codewords {
            match words.get_mut(cw.symbol) {
                Some(slot @ None) => *slot = Some(cw.letters.clone()),
                Some(Some(_)) => return inconsistent(format!("symbol {} repeated", cw.symbol)),
                None => return inconsistent(format!("symbol {} out of range", cw.symbol)),
            }
        }
        let words: Vec<Vec<Letter>> = words.into_iter().map(Option::unwrap).collect();
        let code = Code::from_words(instance, words.clone())?;
        if code.words() != words.as_slice() {
            return inconsistent("symbols are not assigned in lexicographic word order".into());
        }
        for cw in &self.codewords {
            if code.lengths()[cw.symbol] != cw.length {
                return inconsistent(format!("wrong length for symbol {}", cw.symbol));
            }
        }
        if code.total_length() != self.optimal_cost {
            return inconsistent("codeword lengths do not add up to optimal_cost".into());
        }
        Ok(code)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(bytes: &[u8]) -> Result<CodeDocument, DocumentError> {
        Ok(serde_json::from_slice(bytes)?)
    }
}
