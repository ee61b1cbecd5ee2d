//! File formats for the `translit` tool: the tab-separated parallel
//! corpus, the sectioned model file, and gazetteer word lists. The
//! binary in this package wires them to the `translit-core` pipeline.

pub mod formats;
