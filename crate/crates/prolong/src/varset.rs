use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;

/// An ordered set of variable names. Position in the list is the coordinate
/// used by every exponent vector built over the set, so two structurally
/// equal sets are interchangeable.
#[derive(Debug, Clone)]
pub struct VarSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for VarSet {}

pub fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarSet {
    /// Builds a variable set, rejecting duplicates and names outside the
    /// grammar `[A-Za-z][A-Za-z0-9_]*`.
    pub fn new<I, S>(names: I) -> Result<Arc<VarSet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::InvalidArgument(format!(
                    "invalid variable name `{name}`"
                )));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "duplicate variable name `{name}`"
                )));
            }
        }
        Ok(Arc::new(VarSet { names, index }))
    }

    /// `prefix1 .. prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Arc<VarSet> {
        VarSet::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("generated names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}
