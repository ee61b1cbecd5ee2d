//! On-disk formats: the tab-separated parallel corpus, the sectioned
//! model file, and gazetteer word lists.

pub mod corpus;
pub mod gazetteer;
pub mod model;
