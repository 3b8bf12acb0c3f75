pub mod battery;
pub mod current;
pub mod phase_grid;
pub mod sweep;
pub mod tls;
pub mod verify;
