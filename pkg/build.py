"""Cross-platform build script for the UWCell command-line binary.

Supports:
  - macOS (arm64 / x86_64)
  - Windows 10 / 11
  - Linux (x86_64)
"""

from __future__ import annotations

import platform
import shutil
import subprocess
import sys
from pathlib import Path

# import name -> pip name
_DEPENDENCIES = {
    "numpy": "numpy",
    "scipy": "scipy",
    "networkx": "networkx",
    "PyInstaller": "pyinstaller",
}


def _ensure_dependencies() -> None:
    """Install build & runtime dependencies if missing."""
    for module, package in _DEPENDENCIES.items():
        try:
            __import__(module)
        except ImportError:
            print(f"Installing {package} ...")
            subprocess.check_call(
                [sys.executable, "-m", "pip", "install", package],
                stdout=subprocess.DEVNULL,
            )


def main() -> None:
    project_root = Path(__file__).resolve().parent
    entry = project_root / "run.py"

    os_name = platform.system()    # Darwin / Windows / Linux
    print("=== UWCell build ===")
    print(f"OS:       {os_name}")
    print(f"Arch:     {platform.machine()}")
    print(f"Python:   {sys.version}")
    print()

    _ensure_dependencies()

    for d in ("build", "dist"):
        target = project_root / d
        if target.exists():
            print(f"Cleaning {target} ...")
            shutil.rmtree(target)

    sep = ";" if os_name == "Windows" else ":"
    cmd = [
        sys.executable,
        "-m",
        "PyInstaller",
        str(entry),
        "--name", "UWCell",
        "--onedir",
        "--console",
        "--paths", str(project_root / "src"),
        "--add-data", f"{project_root / 'src' / 'UWCell'}{sep}src/UWCell",
        "--collect-submodules", "scipy.spatial",
        "--clean",
        "--noconfirm",
    ]

    print(f"Running: {' '.join(cmd)}")
    print()

    result = subprocess.run(cmd, cwd=str(project_root))
    if result.returncode != 0:
        print()
        print("=== Build FAILED ===")
        sys.exit(result.returncode)

    dist_dir = project_root / "dist" / "UWCell"
    exe_path = dist_dir / ("UWCell.exe" if os_name == "Windows" else "UWCell")
    total_bytes = sum(f.stat().st_size for f in dist_dir.rglob("*") if f.is_file())

    print()
    print("=== Build successful! ===")
    print(f"Output:   {dist_dir}")
    print(f"Binary:   {exe_path}")
    print(f"Size:     {total_bytes / (1024 * 1024):.0f} MB")
    print()
    print(f'Try:  "{exe_path}" kcov --dim 3 --k-max 4')


if __name__ == "__main__":
    main()
