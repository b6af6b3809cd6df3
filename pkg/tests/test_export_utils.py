"""
Tests for export path and naming helpers.
"""

import shutil
import tempfile
import unittest
from pathlib import Path
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from export.utils import (  # noqa: E402
    default_output_name,
    prepare_output_path,
    sanitize_stem,
    secure_mkdir,
)


class TestSanitizeStem(unittest.TestCase):
    """Tests for sanitize_stem()."""

    def test_plain_stem(self):
        self.assertEqual(sanitize_stem("scan_f0.5"), "scan_f0.5")

    def test_spaces_become_underscores(self):
        self.assertEqual(sanitize_stem("  my scan  "), "my_scan")

    def test_special_characters_stripped(self):
        self.assertEqual(sanitize_stem("scan/../f=1"), "scan..f1")

    def test_truncation(self):
        self.assertEqual(len(sanitize_stem("x" * 80)), 50)
        self.assertEqual(sanitize_stem("abcdef", max_length=3), "abc")

    def test_empty_returns_result(self):
        self.assertEqual(sanitize_stem(""), "result")
        self.assertEqual(sanitize_stem("!@#$"), "result")


class TestDefaultOutputName(unittest.TestCase):

    def test_with_f(self):
        self.assertEqual(default_output_name("scan", 0.5, "csv"), "scan_f0.5.csv")
        self.assertEqual(default_output_name("trace", 1.0, "json"), "trace_f1.json")

    def test_without_f(self):
        self.assertEqual(default_output_name("figure2", None, "csv"), "figure2.csv")


class TestOutputPaths(unittest.TestCase):
    """Directory creation for result files."""

    def setUp(self):
        self.temp_dir = Path(tempfile.mkdtemp())

    def tearDown(self):
        if self.temp_dir.exists():
            shutil.rmtree(self.temp_dir)

    def test_parent_created(self):
        target = self.temp_dir / "nested" / "deeper" / "scan.csv"
        resolved = prepare_output_path(target)
        self.assertTrue(resolved.parent.is_dir())
        self.assertEqual(resolved.name, "scan.csv")
        self.assertFalse(resolved.exists())

    def test_directory_target_rejected(self):
        with self.assertRaises(IsADirectoryError):
            prepare_output_path(self.temp_dir)

    @unittest.skipUnless(os.name == "posix", "POSIX permissions only")
    def test_new_directory_mode(self):
        created = secure_mkdir(self.temp_dir / "private")
        self.assertEqual(created.stat().st_mode & 0o777, 0o700)

    @unittest.skipUnless(os.name == "posix", "POSIX permissions only")
    def test_existing_directory_untouched(self):
        existing = self.temp_dir / "shared"
        existing.mkdir()
        existing.chmod(0o755)
        secure_mkdir(existing)
        self.assertEqual(existing.stat().st_mode & 0o777, 0o755)


if __name__ == '__main__':
    unittest.main()
