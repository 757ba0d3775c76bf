"""Tests for abcmeta."""
