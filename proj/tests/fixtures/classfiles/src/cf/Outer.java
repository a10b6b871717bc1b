package cf;

public class Outer {
    private int v;

    public class Inner {
        int get() {
            return v + 1;
        }
    }

    public int twice() {
        return v * 2;
    }
}
