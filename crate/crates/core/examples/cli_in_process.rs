//! Driving the command line from code, as the integration tests do.

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = kacspin::cli::run_with(
        ["kacspin", "exp", "--diagram", "A2", "--level", "3/2", "--i", "1", "--phi", "2pi", "--pretty"],
        &mut out,
        &mut err,
    );
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit code {code}");
}
