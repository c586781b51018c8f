pub mod jacobian;
pub mod kernel;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod roots;
pub mod sample;
pub mod scalar;
pub mod serde_cx;
pub mod verify;
