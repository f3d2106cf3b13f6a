pub mod cli;
pub mod error;
pub mod factor;
pub mod fps;
pub mod guess;
pub mod holonomic;
pub mod hyper;
pub mod input;
pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod render;
pub mod resultant;
