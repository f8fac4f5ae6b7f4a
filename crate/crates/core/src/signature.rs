//! Signatures: sorts, atom-indexed families of operation symbols and their typing.
//!
//! Every family is one orbit of atom tuples, so the typing of a symbol is a
//! property of its family alone and equivariance holds by construction.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::perm::{AtomSet, AtomTuple, Perm, PermError};

macro_rules! name_type {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(name: &str) -> Self {
                $name(Arc::from(name))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name::new(s)
            }
        }
    };
}

name_type!(Sort);
name_type!(
    /// A meta-variable of the term language.
    Var
);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("sort `{0}` declared twice")]
    DuplicateSort(Sort),
    #[error("operation family `{0}` declared twice")]
    DuplicateFamily(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(Sort),
    #[error("unknown operation family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` takes {expected} atom parameter(s), got {found}")]
    AtomArity {
        family: String,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// One orbit of operation symbols sharing a name and a type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpFamily {
    pub name: String,
    pub atom_arity: usize,
    pub arg_sorts: Vec<Sort>,
    pub result: Sort,
}

/// A family member, selected by a tuple of distinct atoms.
#[derive(Clone)]
pub struct OpSymbol {
    family: Arc<OpFamily>,
    params: AtomTuple,
}

impl OpSymbol {
    pub fn family(&self) -> &OpFamily {
        &self.family
    }

    pub fn name(&self) -> &str {
        &self.family.name
    }

    pub fn params(&self) -> &AtomTuple {
        &self.params
    }

    pub fn arity(&self) -> usize {
        self.family.arg_sorts.len()
    }

    pub fn act(&self, p: &Perm) -> OpSymbol {
        OpSymbol {
            family: Arc::clone(&self.family),
            params: self.params.act(p),
        }
    }

    pub fn support(&self) -> AtomSet {
        self.params.underlying()
    }

    pub fn op_type(&self) -> (&[Sort], &Sort) {
        (&self.family.arg_sorts, &self.family.result)
    }

    fn key(&self) -> (&str, &AtomTuple) {
        (&self.family.name, &self.params)
    }
}

impl PartialEq for OpSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for OpSymbol {}

impl PartialOrd for OpSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OpSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl Hash for OpSymbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl fmt::Display for OpSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.family.name)?;
        if self.family.atom_arity > 0 {
            write!(f, "[")?;
            for (i, a) in self.params.atoms().iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for OpSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sorts and operation families, kept in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    sorts: Vec<Sort>,
    families: Vec<Arc<OpFamily>>,
    by_name: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn add_sort(&mut self, sort: &str) -> Result<Sort, SignatureError> {
        let sort = Sort::new(sort);
        if self.sorts.contains(&sort) {
            return Err(SignatureError::DuplicateSort(sort));
        }
        self.sorts.push(sort.clone());
        Ok(sort)
    }

    pub fn add_family(
        &mut self,
        name: &str,
        atom_arity: usize,
        arg_sorts: &[&str],
        result: &str,
    ) -> Result<(), SignatureError> {
        if self.by_name.contains_key(name) {
            return Err(SignatureError::DuplicateFamily(name.to_string()));
        }
        let arg_sorts = arg_sorts
            .iter()
            .map(|s| self.sort(s))
            .collect::<Result<Vec<_>, _>>()?;
        let result = self.sort(result)?;
        self.by_name.insert(name.to_string(), self.families.len());
        self.families.push(Arc::new(OpFamily {
            name: name.to_string(),
            atom_arity,
            arg_sorts,
            result,
        }));
        Ok(())
    }

    pub fn sort(&self, name: &str) -> Result<Sort, SignatureError> {
        self.sorts
            .iter()
            .find(|s| s.as_str() == name)
            .cloned()
            .ok_or_else(|| SignatureError::UnknownSort(Sort::new(name)))
    }

    pub fn has_sort(&self, sort: &Sort) -> bool {
        self.sorts.contains(sort)
    }

    pub fn sorts(&self) -> &[Sort] {
        &self.sorts
    }

    pub fn families(&self) -> impl Iterator<Item = &OpFamily> {
        self.families.iter().map(|f| f.as_ref())
    }

    pub fn family(&self, name: &str) -> Option<&OpFamily> {
        self.by_name.get(name).map(|i| self.families[*i].as_ref())
    }

    /// The member of family `name` indexed by `params`.
    pub fn op(&self, name: &str, params: &[crate::perm::Atom]) -> Result<OpSymbol, SignatureError> {
        let family = self
            .by_name
            .get(name)
            .map(|i| Arc::clone(&self.families[*i]))
            .ok_or_else(|| SignatureError::UnknownFamily(name.to_string()))?;
        if params.len() != family.atom_arity {
            return Err(SignatureError::AtomArity {
                family: name.to_string(),
                expected: family.atom_arity,
                found: params.len(),
            });
        }
        let params = AtomTuple::new(params.to_vec())?;
        Ok(OpSymbol { family, params })
    }

    /// Signature of the untyped λ-calculus: `var[1] : tm`, `lam[1] : (tm) -> tm`,
    /// `app : (tm, tm) -> tm`.
    pub fn lambda() -> Signature {
        let mut sig = Signature::new();
        sig.add_sort("tm").expect("fresh signature");
        sig.add_family("var", 1, &[], "tm").expect("fresh family");
        sig.add_family("lam", 1, &["tm"], "tm")
            .expect("fresh family");
        sig.add_family("app", 0, &["tm", "tm"], "tm")
            .expect("fresh family");
        sig
    }
}
