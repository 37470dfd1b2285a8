//! A worker pool with large stacks. Normal forms of long sums nest deeply,
//! and normalization recurses on them.

use std::sync::OnceLock;

use rayon::{ThreadPool, ThreadPoolBuilder};

const STACK_SIZE: usize = 256 << 20;

fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        ThreadPoolBuilder::new()
            .stack_size(STACK_SIZE)
            .thread_name(|i| format!("lawvere-{i}"))
            .build()
            .expect("worker pool")
    })
}

/// Runs `f` on the large-stack pool; parallel iterators inside it use the same pool.
pub fn deep<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    if pool().current_thread_index().is_some() {
        f()
    } else {
        pool().install(f)
    }
}
