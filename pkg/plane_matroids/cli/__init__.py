from plane_matroids.cli.main import main, run
