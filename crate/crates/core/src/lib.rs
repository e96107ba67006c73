pub mod diagram;
pub mod idcheck;
pub mod jones;
pub mod kauffman;
pub mod rees;
pub mod report;
pub mod verify;
pub mod word;
