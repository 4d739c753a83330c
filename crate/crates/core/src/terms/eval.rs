use std::collections::BTreeMap;

use thiserror::Error;

use super::Term;
use crate::lattice::{Element, Oml, SymDiffKind};

/// Variable name to element.
pub type Assignment = BTreeMap<String, Element>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
}

/// Evaluates `t` bottom-up through the lattice tables.
pub fn eval(l: &Oml, t: &Term, env: &Assignment) -> Result<Element, EvalError> {
    Ok(match t {
        Term::Var(v) => *env
            .get(v)
            .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?,
        Term::Zero => l.bottom(),
        Term::One => l.top(),
        Term::Ortho(a) => l.ortho(eval(l, a, env)?),
        Term::Meet(a, b) => l.meet(eval(l, a, env)?, eval(l, b, env)?),
        Term::Join(a, b) => l.join(eval(l, a, env)?, eval(l, b, env)?),
        Term::SymDiff(k, a, b) => l.sym_diff(*k, eval(l, a, env)?, eval(l, b, env)?),
    })
}

#[derive(Clone, Copy, Debug)]
enum Node {
    Slot(usize),
    Zero,
    One,
    Ortho(usize),
    Meet(usize, usize),
    Join(usize, usize),
    Sym(SymDiffKind, usize, usize),
}

/// A term flattened into an arena whose variables are positional slots.
///
/// Used by the exhaustive checkers so that each assignment costs only table
/// lookups.
#[derive(Clone, Debug)]
pub struct CompiledTerm {
    nodes: Vec<Node>,
    root: usize,
}

impl CompiledTerm {
    /// Compiles `t` against the ordered variable list `vars`.
    pub fn new(t: &Term, vars: &[String]) -> Result<Self, EvalError> {
        let mut nodes = Vec::new();
        let root = Self::lower(t, vars, &mut nodes)?;
        Ok(CompiledTerm { nodes, root })
    }

    fn lower(t: &Term, vars: &[String], nodes: &mut Vec<Node>) -> Result<usize, EvalError> {
        let node = match t {
            Term::Var(v) => Node::Slot(
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?,
            ),
            Term::Zero => Node::Zero,
            Term::One => Node::One,
            Term::Ortho(a) => Node::Ortho(Self::lower(a, vars, nodes)?),
            Term::Meet(a, b) => {
                Node::Meet(Self::lower(a, vars, nodes)?, Self::lower(b, vars, nodes)?)
            }
            Term::Join(a, b) => {
                Node::Join(Self::lower(a, vars, nodes)?, Self::lower(b, vars, nodes)?)
            }
            Term::SymDiff(k, a, b) => Node::Sym(
                *k,
                Self::lower(a, vars, nodes)?,
                Self::lower(b, vars, nodes)?,
            ),
        };
        nodes.push(node);
        Ok(nodes.len() - 1)
    }

    #[inline]
    pub fn eval(&self, l: &Oml, slots: &[Element]) -> Element {
        self.eval_node(l, slots, self.root)
    }

    fn eval_node(&self, l: &Oml, slots: &[Element], at: usize) -> Element {
        match self.nodes[at] {
            Node::Slot(i) => slots[i],
            Node::Zero => l.bottom(),
            Node::One => l.top(),
            Node::Ortho(a) => l.ortho(self.eval_node(l, slots, a)),
            Node::Meet(a, b) => l.meet(self.eval_node(l, slots, a), self.eval_node(l, slots, b)),
            Node::Join(a, b) => l.join(self.eval_node(l, slots, a), self.eval_node(l, slots, b)),
            Node::Sym(k, a, b) => {
                l.sym_diff(k, self.eval_node(l, slots, a), self.eval_node(l, slots, b))
            }
        }
    }
}
