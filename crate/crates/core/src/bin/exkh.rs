fn main() -> std::process::ExitCode {
    exkh::cli::main()
}
