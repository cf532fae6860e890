pub mod algebra;
pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod linalg;
pub mod modules;
pub mod oracle;
pub mod quiver;
