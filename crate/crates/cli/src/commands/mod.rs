pub mod family;
pub mod subdivide;
pub mod verify;
