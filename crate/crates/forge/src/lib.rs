pub mod numeric;
pub mod parse;
pub mod report;
pub mod suite;
