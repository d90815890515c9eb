//! Weyl groups acting on the weights (signed permutations) and on the torus
//! coordinates (integer matrices), and their conjugacy classes.

mod census;
mod classes;
mod data;
mod element;
mod enumerate;

pub use census::class_census;
pub use classes::{
    charpoly_from_traces, class_source, classes_by_enumeration, conjugacy_classes, match_against_enumeration,
    validate_class_table, ClassSource, ConjugacyClass, ConjugacyClassTable, EmbeddedSource, EnumeratedClasses,
    EnumeratedSource, Fingerprint, Violation, CLASS_SOURCES,
};
pub use data::{
    class_table_from_records, embedded_class_table, format_class_data, parse_class_data, ClassRecords,
    EMBEDDED_CLASS_DATA,
};
pub use element::{compose, format_word, SignedPermutation, WeylElement, WeylGroup};
pub use enumerate::{enumerate_group, key_of, ElementKey, GroupEnumeration, E7_ENUMERATION_BYTES};

use crate::error::Result;
use crate::rootdata::GroupType;

/// `s_i` in `W(g)`.
pub fn simple_reflection(g: GroupType, i: usize) -> Result<WeylElement> {
    WeylGroup::new(g).simple_reflection(i)
}
