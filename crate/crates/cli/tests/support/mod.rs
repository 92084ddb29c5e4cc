#![allow(dead_code)]

pub mod gf2m;
pub mod table_field;
