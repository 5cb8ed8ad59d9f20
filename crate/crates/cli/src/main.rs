use std::io;

fn main() {
    let code = equising_cli::run(
        std::env::args(),
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
