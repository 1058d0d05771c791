"""Guarded runner for generated formalizer programs.

Executes the program named on the command line inside the current working
directory and uses an audit hook to deny writes outside that directory,
renames/links, process spawning, low-level library loading, and any socket
use. The supervising process provides the scratch directory, wall-clock
kill, and file-size limit.
"""

import os
import sys

WRITE_MODES = set("wax+")
WRITE_FLAGS = (
    os.O_WRONLY | os.O_RDWR | os.O_APPEND | os.O_CREAT | os.O_TRUNC
)
DENIED_EVENTS = {
    "os.rename",
    "os.replace",
    "os.link",
    "os.symlink",
    "os.chmod",
    "os.chown",
    "os.system",
    "os.exec",
    "os.fork",
    "os.forkpty",
    "os.posix_spawn",
    "os.spawn",
    "os.startfile",
    "subprocess.Popen",
    "ctypes.dlopen",
}
PATH_CHECKED_EVENTS = {"os.remove", "os.unlink", "os.rmdir", "os.mkdir", "os.truncate"}


def main():
    if len(sys.argv) != 2:
        print("usage: sandbox_runner.py PROGRAM", file=sys.stderr)
        return 2
    program = sys.argv[1]
    root = os.path.realpath(os.getcwd())

    def inside_root(path):
        if isinstance(path, int):  # file descriptor, already opened
            return True
        if isinstance(path, bytes):
            path = os.fsdecode(path)
        if not isinstance(path, (str, os.PathLike)):
            return True
        path = os.fspath(path)
        if not os.path.isabs(path):
            path = os.path.join(root, path)
        resolved = os.path.realpath(path)
        return resolved == root or resolved.startswith(root + os.sep)

    def guard(event, args):
        if event == "open":
            path, mode, flags = args
            writes = (
                any(c in mode for c in WRITE_MODES)
                if mode
                else bool(flags & WRITE_FLAGS)
            )
            if writes and not inside_root(path):
                raise PermissionError(f"write outside the sandbox: {path!r}")
        elif event in PATH_CHECKED_EVENTS:
            if args and not inside_root(args[0]):
                raise PermissionError(f"{event} outside the sandbox: {args[0]!r}")
        elif event in DENIED_EVENTS:
            raise PermissionError(f"{event} is not allowed in the sandbox")
        elif event.startswith("socket."):
            raise PermissionError("network access is not allowed in the sandbox")

    with open(program, "rb") as handle:
        code = compile(handle.read(), program, "exec")

    sys.addaudithook(guard)
    scope = {"__name__": "__main__", "__file__": program, "__builtins__": __builtins__}
    exec(code, scope)
    return 0


if __name__ == "__main__":
    sys.exit(main())
