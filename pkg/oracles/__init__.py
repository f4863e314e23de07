"""Brute-force cross-checks for the exact algorithms"""
