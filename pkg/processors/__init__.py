# Processors package