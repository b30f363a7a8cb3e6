pub mod agr;
pub mod dp2_table;
pub mod kdv;
pub mod omega;
pub mod traj;

use crate::error::{invalid, CliResult};
use crate::Format;

pub(crate) fn require(format: Format, allowed: &[Format], what: &str) -> CliResult<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        invalid(format!("{what} does not support {format:?} output"))
    }
}
