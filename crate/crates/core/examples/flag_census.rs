//! Point counts of flag varieties and their fitted degrees.

use isoform::error::Result;
use isoform::flagcount::{self, CensusReport, Family};

fn main() -> Result<()> {
    println!("{}", CensusReport::CSV_HEADER);
    for (family, n, j) in [(Family::X, 4, 2), (Family::XIso, 5, 2), (Family::YIso, 6, 3), (Family::YIso, 6, 2)] {
        let report = flagcount::census(family, n, j, &[3, 5, 7], None)?;
        for line in report.csv_rows() {
            println!("{line}");
        }
    }
    Ok(())
}
