pub mod charfun;
pub mod distribution;
pub mod mc;
pub mod sweep;
