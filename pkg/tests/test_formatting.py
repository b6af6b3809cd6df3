"""
Tests for formatting and argument-parsing helpers.
"""

import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from domain.analytic import Verdict  # noqa: E402
from utils.formatting import (  # noqa: E402
    format_complex,
    format_duration,
    format_number,
    format_value,
    json_value,
    parse_range,
    parse_window,
)


class TestFormatNumber(unittest.TestCase):

    def test_round_trip_digits(self):
        for value in (0.1, 1.0 / 3.0, 2.0 ** 0.5, 1e-300, -123456.789):
            self.assertEqual(float(format_number(value)), value)

    def test_negative_zero(self):
        self.assertEqual(format_number(-0.0), "0")

    def test_integers_short(self):
        self.assertEqual(format_number(12.0), "12")


class TestFormatValue(unittest.TestCase):

    def test_booleans(self):
        self.assertEqual(format_value(True), "true")
        self.assertEqual(format_value(np.bool_(False)), "false")

    def test_enum_and_ints(self):
        self.assertEqual(format_value(Verdict.BOUNDARY), "Boundary")
        self.assertEqual(format_value(np.int64(7)), "7")

    def test_floats_and_strings(self):
        self.assertEqual(format_value(np.float64(0.5)), "0.5")
        self.assertEqual(format_value("AllReal"), "AllReal")

    def test_json_value(self):
        self.assertEqual(json_value(Verdict.INSIDE), "Inside")
        self.assertIsInstance(json_value(np.float64(1.5)), float)
        self.assertEqual(json_value((1, 2)), (1, 2))

    def test_complex(self):
        self.assertEqual(format_complex(complex(1.5, -0.25)), "1.5-0.25j")
        self.assertEqual(format_complex(complex(-3.0, 0.0)), "-3+0j")


class TestParseRange(unittest.TestCase):

    def test_three_values(self):
        self.assertEqual(parse_range("-4,4,801"), (-4.0, 4.0, 801))

    def test_default_steps(self):
        self.assertEqual(parse_range("-1,1", default_steps=400), (-1.0, 1.0, 400))

    def test_missing_steps(self):
        with self.assertRaises(ValueError):
            parse_range("-1,1")

    def test_invalid(self):
        for text in ("a,b,3", "1,0,10", "0,1,1.5", "0,1,1", "0,inf,10", "0,1,2,3"):
            with self.assertRaises(ValueError, msg=text):
                parse_range(text)


class TestParseWindow(unittest.TestCase):

    def test_valid(self):
        self.assertEqual(parse_window("0,4,-1,1"), (0.0, 4.0, -1.0, 1.0))

    def test_invalid(self):
        for text in ("0,4,1", "4,0,0,1", "0,1,2,x", ""):
            with self.assertRaises(ValueError, msg=text):
                parse_window(text)


class TestFormatDuration(unittest.TestCase):

    def test_values(self):
        self.assertEqual(format_duration(0), "0.00s")
        self.assertEqual(format_duration(1.234), "1.23s")
        self.assertEqual(format_duration(125), "2m 05s")


if __name__ == '__main__':
    unittest.main()
