"""
Tests for the ogt_sim package.
"""
