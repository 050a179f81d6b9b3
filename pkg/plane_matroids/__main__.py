from plane_matroids.cli import main

if __name__ == "__main__":
    main()
