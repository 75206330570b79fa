#!/usr/bin/env python3
"""
Build the Sphinx documentation locally.
"""

import subprocess
import sys
from pathlib import Path


def main():
    project_root = Path(__file__).parent.parent
    source_dir = project_root / "docs" / "source"
    build_dir = project_root / "docs" / "build" / "html"

    print("🔨 Building qotp documentation...")
    (source_dir / "_static").mkdir(exist_ok=True)
    try:
        result = subprocess.run(
            [sys.executable, "-m", "sphinx", "-b", "html", str(source_dir), str(build_dir)],
            check=True,
            capture_output=True,
            text=True,
        )
    except subprocess.CalledProcessError as e:
        print(f"❌ Error building documentation: {e}")
        print(f"stdout: {e.stdout}")
        print(f"stderr: {e.stderr}")
        sys.exit(1)

    print("✅ Documentation built successfully!")
    print(f"📁 Output directory: {build_dir}")
    if "warning" in result.stderr.lower():
        print("⚠️  Warnings detected during build:")
        print(result.stderr)


if __name__ == "__main__":
    main()
