use std::collections::HashMap;
use std::sync::Arc;

use crate::error::SeriesError;

/// Ordered list of weighted formal symbols plus the truncation order N.
#[derive(Debug, PartialEq, Eq)]
pub struct VarContext {
    names: Vec<String>,
    weights: Vec<u32>,
    order: u32,
    index: HashMap<String, usize>,
}

impl VarContext {
    pub fn new<S: Into<String>>(symbols: Vec<(S, u32)>, order: u32) -> Result<Arc<Self>, SeriesError> {
        let mut names = Vec::with_capacity(symbols.len());
        let mut weights = Vec::with_capacity(symbols.len());
        let mut index = HashMap::new();
        for (i, (n, w)) in symbols.into_iter().enumerate() {
            let n: String = n.into();
            if index.insert(n.clone(), i).is_some() {
                return Err(SeriesError::DuplicateSymbol(n));
            }
            names.push(n);
            weights.push(w);
        }
        Ok(Arc::new(VarContext { names, weights, order, index }))
    }

    /// Same symbols, different truncation order.
    pub fn with_order(&self, order: u32) -> Arc<Self> {
        Arc::new(VarContext {
            names: self.names.clone(),
            weights: self.weights.clone(),
            order,
            index: self.index.clone(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn idx(&self, name: &str) -> usize {
        self.index(name).unwrap_or_else(|| panic!("unknown symbol {}", name))
    }

    pub fn same_symbols(&self, other: &VarContext) -> bool {
        self.names == other.names && self.weights == other.weights
    }
}

pub fn same_context(a: &Arc<VarContext>, b: &Arc<VarContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
