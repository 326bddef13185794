pub mod const_trees;
pub mod dep_trees;
pub mod documents;
