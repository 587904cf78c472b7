pub mod algebra;
pub mod constraints;
pub mod intseries;
pub mod io;
pub mod par;
pub mod report;
pub mod scalar;
pub mod weights;
