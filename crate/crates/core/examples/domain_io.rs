//! Reading, validating and writing domains in the JSON format used by the CLI.

use toricap::io::{parse_domain, report_csv_row, report_json, serialize_domain, CSV_HEADER};
use toricap::capacity_report;

fn main() {
    let inputs = [
        r#"{"kind":"ball","n":4,"a":"2"}"#,
        r#"{"kind":"polygon2d","vertices":[["2/5","0"],["7/10","3/10"],["3/10","7/10"],["0","2/5"]]}"#,
        r#"{"kind":"rectilinear2d","rects":[{"x0":"0","x1":"2","y0":"0","y1":"1/2"},{"x0":"0","x1":"1/2","y0":"0","y1":"2"}]}"#,
        // Rejected: the chain turns clockwise.
        r#"{"kind":"polygon2d","vertices":[["1","0"],["0","1"],["1","1"]]}"#,
        r#"{"kind":"nduc","n":2,"a":"3/0"}"#,
    ];
    let mut rows = vec![CSV_HEADER.to_string()];
    for text in inputs {
        match parse_domain(text) {
            Ok(d) => {
                println!("canonical: {}", serialize_domain(&d));
                rows.push(report_csv_row(None, &capacity_report(&d).unwrap()));
            }
            Err(e) => println!("rejected, exit status {}: {e}", e.exit_code()),
        }
    }
    println!("\n{}\n", rows.join("\n"));
    let d = parse_domain(inputs[2]).unwrap();
    println!("{}", report_json(&capacity_report(&d).unwrap()));
}
