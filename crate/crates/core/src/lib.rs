pub mod classify;
pub mod exactla;
pub mod families;
pub mod polycore;
pub mod syzres;
