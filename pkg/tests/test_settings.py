"""
Tests for run configuration loading and validation.
"""

import os
import shutil
import sys
import tempfile
import threading
import unittest
from pathlib import Path
from unittest.mock import patch

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from config.settings import CONFIG_ENV_VAR, ConfigError, ConfigManager, RunConfig  # noqa: E402


class TestRunConfig(unittest.TestCase):
    """Defaults and __post_init__ validation."""

    def test_defaults(self):
        config = RunConfig()
        self.assertEqual(config.abs_tol, 1e-10)
        self.assertEqual(config.rel_tol, 1e-12)
        self.assertEqual(config.boundary_band, 1e-9)
        self.assertEqual(config.agreement_band, 1e-6)
        self.assertEqual(config.resolution, 101)
        self.assertEqual(config.rays, 64)
        self.assertEqual(config.trace_tol, 1e-8)
        self.assertEqual(config.window, (0.0, 4.0, 0.0, 4.0))
        self.assertEqual(config.output_format, "csv")
        self.assertEqual(config.out, "")

    def test_non_positive_tolerances(self):
        for name in ("abs_tol", "rel_tol", "boundary_band", "agreement_band", "trace_tol"):
            with self.assertRaises(ConfigError, msg=name):
                RunConfig(**{name: 0.0})

    def test_integer_ranges(self):
        with self.assertRaises(ConfigError):
            RunConfig(resolution=1)
        with self.assertRaises(ConfigError):
            RunConfig(rays=4)
        with self.assertRaises(ConfigError):
            RunConfig(figure_steps=1)
        with self.assertRaises(ConfigError):
            RunConfig(workers=-1)
        with self.assertRaises(ConfigError):
            RunConfig(samples=0)

    def test_format_and_window(self):
        with self.assertRaises(ConfigError):
            RunConfig(output_format="xml")
        with self.assertRaises(ConfigError):
            RunConfig(window=(1.0, 0.0, 0.0, 1.0))
        with self.assertRaises(ConfigError):
            RunConfig(window=(0.0, 1.0))

    def test_worker_count(self):
        self.assertEqual(RunConfig(workers=3).worker_count, 3)
        self.assertGreaterEqual(RunConfig(workers=0).worker_count, 1)

    def test_to_dict(self):
        data = RunConfig().to_dict()
        self.assertEqual(data["window"], [0.0, 4.0, 0.0, 4.0])
        self.assertEqual(data["resolution"], 101)


class TestConfigManager(unittest.TestCase):
    """Layered loading: defaults, file, overrides."""

    def setUp(self):
        self.temp_dir = Path(tempfile.mkdtemp())
        self.config_path = self.temp_dir / "run.conf"

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_no_file_gives_defaults(self):
        with patch.dict(os.environ, {}, clear=False):
            os.environ.pop(CONFIG_ENV_VAR, None)
            with patch('config.settings.load_dotenv'):
                manager = ConfigManager()
        self.assertIsNone(manager.config_file)
        self.assertEqual(manager.load(), RunConfig())

    def test_env_var_names_file(self):
        self.config_path.write_text("resolution = 51\n")
        with patch.dict(os.environ, {CONFIG_ENV_VAR: str(self.config_path)}):
            with patch('config.settings.load_dotenv'):
                manager = ConfigManager()
        self.assertEqual(manager.config_file, self.config_path)
        self.assertEqual(manager.load().resolution, 51)

    def test_file_values_parsed(self):
        self.config_path.write_text(
            "# tolerances\n"
            "abs_tol = 1e-11\n"
            "window = -1,1,0,2\n"
            "output_format = json\n"
            "workers = 2\n"
        )
        config = ConfigManager(self.config_path).load()
        self.assertEqual(config.abs_tol, 1e-11)
        self.assertEqual(config.window, (-1.0, 1.0, 0.0, 2.0))
        self.assertEqual(config.output_format, "json")
        self.assertEqual(config.workers, 2)

    def test_overrides_beat_file(self):
        self.config_path.write_text("resolution = 51\nrays = 16\n")
        config = ConfigManager(self.config_path).load({"resolution": 21, "rays": None})
        self.assertEqual(config.resolution, 21)
        self.assertEqual(config.rays, 16)

    def test_unknown_key_warned(self):
        self.config_path.write_text("colour = blue\nrays = 16\n")
        with self.assertLogs('config.settings', level='WARNING') as logs:
            config = ConfigManager(self.config_path).load()
        self.assertEqual(config.rays, 16)
        self.assertTrue(any("colour" in line for line in logs.output))

    def test_bad_value_raises(self):
        self.config_path.write_text("resolution = many\n")
        with self.assertRaises(ConfigError):
            ConfigManager(self.config_path).load()

    def test_out_of_range_value_raises(self):
        self.config_path.write_text("rays = 2\n")
        with self.assertRaises(ConfigError):
            ConfigManager(self.config_path).load()

    def test_unknown_override_raises(self):
        with self.assertRaises(ConfigError):
            ConfigManager(self.config_path).load({"colour": "blue"})

    def test_missing_file_warns(self):
        with self.assertLogs('config.settings', level='WARNING'):
            config = ConfigManager(self.temp_dir / "absent.conf").load()
        self.assertEqual(config, RunConfig())

    def test_save_then_load(self):
        original = RunConfig(abs_tol=3e-11, window=(-2.0, 2.0, 0.0, 1.5), rays=32, out="scan.csv")
        manager = ConfigManager(self.config_path)
        manager.save(original)
        self.assertEqual(manager.load(), original)

    def test_save_without_path_raises(self):
        with patch('config.settings.load_dotenv'), patch.dict(os.environ, {CONFIG_ENV_VAR: ""}):
            manager = ConfigManager()
        with self.assertRaises(ConfigError):
            manager.save(RunConfig())

    def test_concurrent_saves(self):
        manager = ConfigManager(self.config_path)
        errors = []

        def save(rays):
            try:
                manager.save(RunConfig(rays=rays))
            except Exception as e:
                errors.append(e)

        threads = [threading.Thread(target=save, args=(8 + k,)) for k in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        self.assertEqual(errors, [])
        self.assertIn(manager.load().rays, range(8, 16))


if __name__ == '__main__':
    unittest.main()
