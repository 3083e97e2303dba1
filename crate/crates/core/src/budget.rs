/// Limits for the exhaustive searches.
///
/// `nodes` bounds the number of backtracking assignments; the size caps
/// reject inputs before any search starts. The `FIBRATO_BUDGET` environment
/// variable overrides `nodes` for every default constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
    pub max_objects: usize,
    pub max_morphisms: usize,
}

pub const BUDGET_ENV: &str = "FIBRATO_BUDGET";

impl Budget {
    /// Isomorphism search: up to 8 objects and 64 morphisms.
    pub fn iso_default() -> Self {
        Budget {
            nodes: env_nodes().unwrap_or(2_000_000),
            max_objects: 8,
            max_morphisms: 64,
        }
    }

    /// Automorphism 2-group search: up to 4 objects and 24 morphisms.
    pub fn aut_default() -> Self {
        Budget {
            nodes: env_nodes().unwrap_or(2_000_000),
            max_objects: 4,
            max_morphisms: 24,
        }
    }

    pub fn unlimited() -> Self {
        Budget {
            nodes: u64::MAX,
            max_objects: usize::MAX,
            max_morphisms: usize::MAX,
        }
    }

    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.nodes = nodes;
        self
    }

    pub(crate) fn admits(&self, objects: usize, morphisms: usize) -> bool {
        objects <= self.max_objects && morphisms <= self.max_morphisms
    }
}

fn env_nodes() -> Option<u64> {
    std::env::var(BUDGET_ENV).ok()?.trim().parse().ok()
}

/// Running node counter shared by the backtracking searches.
#[derive(Debug)]
pub(crate) struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    pub(crate) fn new(limit: u64) -> Self {
        Meter { used: 0, limit }
    }

    pub(crate) fn tick(&mut self) -> crate::Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(crate::Error::BudgetExceeded {
                nodes: self.used,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}
