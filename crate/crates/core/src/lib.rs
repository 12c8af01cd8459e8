pub mod exactlin;
pub mod liealg;
pub mod reduction;
pub mod report;
pub mod geometry;
pub mod lang;
pub mod structure;
pub mod qiengine;
