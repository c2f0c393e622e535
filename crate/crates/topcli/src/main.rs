fn main() {
    std::process::exit(topcli::run(std::env::args_os()));
}
