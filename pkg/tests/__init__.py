"""Test suite for the bosonic stabilizer toolkit."""
