use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Search limits shared by every enumeration in the crate.
///
/// Exceeding a limit is always reported as [`Error::BudgetExceeded`]; no
/// enumeration silently truncates its output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Largest total group order |Γ| an extension computation may touch.
    pub max_total_order: usize,
    /// Largest number of candidate extensions a backtracking search may try.
    pub max_hom_search: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_total_order: 200,
            max_hom_search: 10_000_000,
        }
    }
}

impl Budget {
    pub fn check_total_order(&self, order: usize) -> Result<()> {
        if order > self.max_total_order {
            return Err(Error::budget(
                format!("total group order {order}"),
                self.max_total_order as u64,
            ));
        }
        Ok(())
    }
}

/// Counts candidate extensions tried by a backtracking search.
pub(crate) struct SearchCounter {
    tried: u64,
    bound: u64,
}

impl SearchCounter {
    pub(crate) fn new(budget: &Budget) -> Self {
        SearchCounter {
            tried: 0,
            bound: budget.max_hom_search,
        }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.tried += 1;
        if self.tried > self.bound {
            return Err(Error::budget("homomorphism search", self.bound));
        }
        Ok(())
    }
}
