//! Cooperative cancellation for long computations (elimination, census).

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Default)]
pub struct CancelToken {
    flag: Option<Arc<AtomicBool>>,
    deadline: Option<Instant>,
}

impl CancelToken {
    /// A token that never fires.
    pub fn none() -> CancelToken {
        CancelToken::default()
    }

    /// Fires once the wall clock passes `budget` from now.
    pub fn with_budget(budget: Duration) -> CancelToken {
        CancelToken {
            flag: Some(Arc::new(AtomicBool::new(false))),
            deadline: Some(Instant::now() + budget),
        }
    }

    pub fn with_flag() -> CancelToken {
        CancelToken {
            flag: Some(Arc::new(AtomicBool::new(false))),
            deadline: None,
        }
    }

    pub fn cancel(&self) {
        if let Some(f) = &self.flag {
            f.store(true, Ordering::Relaxed);
        }
    }

    pub fn cancelled(&self) -> bool {
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return true;
            }
        }
        self.flag
            .as_ref()
            .is_some_and(|f| f.load(Ordering::Relaxed))
    }
}
