"""Extremal CPA constructions: sawtooth, lifts and monotone-path functions"""
