//! Permutation groups, group actions and the internal-groupoid form.

mod action;
mod group;
mod internal;
mod perm;

pub use action::{
    action_to_rep, check_action, check_rep, orbits_stabilizers, rep_to_action, GroupAction,
    Orbit, RepTable,
};
pub use group::{
    close_generators, direct_product, group_as_category, standard_group, wreath_product,
    GroupKind, PermGroup, WreathProduct, CLOSURE_BUDGET,
};
pub use internal::{category_to_internal, check_internal_groupoid, GroupForm, InternalGroupoidData};
pub use perm::Perm;
