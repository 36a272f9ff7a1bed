//! Switch between rayon and plain iterators.
//!
//! With the `parallel` feature the macros below produce rayon parallel
//! iterators, otherwise the equivalent std iterators. Call sites only use
//! adapters both families share (`map`, `filter`, `all`, `any`, `collect`),
//! and rayon's `collect` keeps input order, so output is identical either way.

#[cfg(feature = "parallel")]
pub(crate) use rayon::prelude::*;

macro_rules! par_iter {
    ($e:expr) => {{
        #[cfg(feature = "parallel")]
        let it = $e.par_iter();
        #[cfg(not(feature = "parallel"))]
        let it = $e.iter();
        it
    }};
}

macro_rules! par_range {
    ($e:expr) => {{
        #[cfg(feature = "parallel")]
        let it = ($e).into_par_iter();
        #[cfg(not(feature = "parallel"))]
        let it = ($e).into_iter();
        it
    }};
}

/// Whether data-parallel loops are compiled in.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
