from plane_matroids.cli import main

main()
