//! Output records for the `caterpillar` command-line tool and their text,
//! CSV and JSON renderings.

pub mod record;
pub mod render;
