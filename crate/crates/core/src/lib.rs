pub mod besselk;
pub mod cli;
pub mod coeffs;
pub mod error;
pub mod kernels;
pub mod lp;
pub mod numerics;
pub mod theta;
pub mod xi;
pub mod zeros;
