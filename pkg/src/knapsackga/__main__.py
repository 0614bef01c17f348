from knapsackga.cli import run

run()
