"""
Reports, sweeps, verification suites and plot output behind the CLI
"""
