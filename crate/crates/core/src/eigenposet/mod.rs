//! `N(G, m, s)`: conjugacy classes of elements of order dividing `m` with
//! `s` distinct eigenvalues in the smallest faithful representation.
//!
//! Torus points are sorted by which eigenvalue coincidences they satisfy.
//! Each coincidence is a row of the matrix `P`; the sets of rows that can
//! vanish together are the closed row subsets, ordered by containment.
//! Möbius inversion over that poset counts points by their exact set of
//! vanishing rows, and Burnside's lemma then counts classes.

mod cache;
mod count;
mod pmatrix;
mod poset;

pub use cache::{
    cache_file_name, load_or_build, load_poset, poset_from_json, poset_to_json, save_poset, CACHE_DIR_ENV,
};
pub use count::{default_cache_dir, eigen_counter, fix_s_count, n_gms, n_gms_symbolic, EigenCounter};

pub use pmatrix::{build_p_matrix, s_value, s_w, PMatrix, RowTag};
pub use poset::{build_m_poset, closure, find_r, KernelType, MNode, MPoset};
