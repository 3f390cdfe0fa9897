pub mod bar;
pub mod bigraded;
pub mod cli;
pub mod cosimplicial;
pub mod dga;
pub mod gm;
pub mod hopf;
pub mod lincomb;
pub mod linalg;
pub mod nerve;
pub mod resolutions;
