package inv;

public class Codes {
    public static final int OK = 0;
    public static final int FAIL = 1;
}
