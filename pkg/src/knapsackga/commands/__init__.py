# importing the command modules registers them
from knapsackga.commands import attack, cipher, oracle, solve, sweep  # noqa: F401
