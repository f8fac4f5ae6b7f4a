//! A line-oriented text format for signatures, theories, judgements and
//! derivation scripts.
//!
//! ```text
//! sort tm;
//! op lam[1] : (tm) -> tm;
//! theory lambda nel {
//!   axiom alpha : (x : tm) |- {a} # lam[a] x : tm;
//! }
//! derivation alpha_refl in lambda : (x : tm) |- lam[a] x ~ lam[a] x : tm :=
//!   refl{(x : tm) |- lam[a] x : tm};
//! ```

mod lexer;
mod parser;
mod printer;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::env::{Judgement, Theory};
use crate::kernel::{check_as, CheckError, Derivation, Rule, RuleError};
use crate::signature::Signature;

pub use parser::{parse_file, parse_judgement, parse_script, parse_term};
pub use printer::{print_file, print_script, print_signature, print_theory};

/// A 1-based line and column.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Lexical, syntactic and reference errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

impl SyntaxError {
    pub fn new(pos: Pos, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            pos,
            message: message.into(),
        }
    }
}

/// A rule application tree as written, before the kernel has seen it.
/// Equality ignores source positions.
#[derive(Debug, Clone)]
pub struct Script {
    pub pos: Pos,
    pub rule: Rule,
    pub premises: Vec<Script>,
}

impl PartialEq for Script {
    fn eq(&self, other: &Script) -> bool {
        self.rule == other.rule && self.premises == other.premises
    }
}

impl Eq for Script {}

/// A script node the kernel refused.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos} ({rule}): {error}")]
pub struct ElabError {
    pub pos: Pos,
    pub rule: &'static str,
    pub error: RuleError,
}

impl Script {
    pub fn from_derivation(d: &Derivation) -> Script {
        Script {
            pos: Pos::default(),
            rule: d.rule().clone(),
            premises: d.premises().iter().map(Script::from_derivation).collect(),
        }
    }

    /// Rebuilds the derivation bottom-up through the kernel, under the
    /// theory's flavour.
    pub fn elaborate(&self, theory: &Theory) -> Result<Derivation, ElabError> {
        let premises = self
            .premises
            .iter()
            .map(|p| p.elaborate(theory))
            .collect::<Result<Vec<_>, _>>()?;
        Derivation::infer(theory, self.rule.clone(), premises).map_err(|error| ElabError {
            pos: self.pos,
            rule: self.rule.name(theory.flavour),
            error,
        })
    }
}

/// `derivation NAME in THEORY : GOAL := SCRIPT;`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationItem {
    pub name: String,
    pub theory: String,
    pub goal: Judgement,
    pub script: Script,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ItemError {
    #[error("{0}: unknown theory `{1}`")]
    UnknownTheory(Pos, String),
    #[error(transparent)]
    Elab(#[from] ElabError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("{pos}: derivation concludes `{found}`, not the stated goal")]
    Goal { pos: Pos, found: Box<Judgement> },
}

/// A parsed file: one signature, then theories, named judgements and
/// derivations in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub sig: Arc<Signature>,
    pub theories: Vec<Theory>,
    pub judgements: Vec<(String, Judgement)>,
    pub derivations: Vec<DerivationItem>,
}

impl SourceFile {
    pub fn new(sig: Arc<Signature>) -> SourceFile {
        SourceFile {
            sig,
            theories: Vec::new(),
            judgements: Vec::new(),
            derivations: Vec::new(),
        }
    }

    pub fn theory(&self, name: &str) -> Option<&Theory> {
        self.theories.iter().find(|t| t.name == name)
    }

    /// Elaborates one derivation item and re-checks the result.
    pub fn check_item(&self, item: &DerivationItem) -> Result<Derivation, ItemError> {
        let theory = self
            .theory(&item.theory)
            .ok_or_else(|| ItemError::UnknownTheory(item.pos, item.theory.clone()))?;
        let d = item.script.elaborate(theory)?;
        check_as(theory, theory.flavour, &d)?;
        if d.conclusion() != &item.goal {
            return Err(ItemError::Goal {
                pos: item.pos,
                found: Box::new(d.conclusion().clone()),
            });
        }
        Ok(d)
    }
}
