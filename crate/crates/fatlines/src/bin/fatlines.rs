fn main() {
    // Restore the default SIGPIPE disposition so `fatlines ... | head`
    // terminates quietly instead of panicking mid-report.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(fatlines::cli::run());
}
